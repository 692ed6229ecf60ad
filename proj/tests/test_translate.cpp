#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "xb/translate.hpp"
#include "oracles.hpp"

using namespace xb;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("xor_to_block: rhs=0 forbids the odd-parity points") {
  const XorClause c{{0, 1, 2}, false};
  const auto block = xor_to_block(c);
  // sign triples 001, 010, 100, 111 in lexicographic order
  const std::array<std::array<bool, 3>, 4> expect = {{{false, false, true},
                                                      {false, true, false},
                                                      {true, false, false},
                                                      {true, true, true}}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(block[i].vars == c.vars);
    CHECK(block[i].neg == expect[i]);
  }
}

TEST_CASE("xor_to_block: rhs=1 forbids the even-parity points") {
  const XorClause c{{3, 5, 9}, true};
  const auto block = xor_to_block(c);
  const std::array<std::array<bool, 3>, 4> expect = {{{false, false, false},
                                                      {false, true, true},
                                                      {true, false, true},
                                                      {true, true, false}}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(block[i].vars == c.vars);
    CHECK(block[i].neg == expect[i]);
  }
}

TEST_CASE("xor_to_block: each clause forbids exactly one point, with parity != rhs") {
  for (const bool rhs : {false, true}) {
    const XorClause c{{0, 1, 2}, rhs};
    unsigned forbidden = 0;
    for (const Clause3 &cl : xor_to_block(c)) {
      // the unique falsifying assignment of (l1 | l2 | l3)
      unsigned point = 0;
      for (int i = 0; i < 3; ++i)
        if (cl.neg[i]) point |= 1u << i;
      CHECK((std::popcount(point) % 2 != 0) != rhs);
      forbidden |= 1u << point;
    }
    CHECK(std::popcount(forbidden) == 4);
  }
}

TEST_CASE("translate: satisfiability equals the XOR label (exhaustive)") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const XorInstance inst = generate_instance(12, 15, trial % 2 == 0, rng);
    const CnfFormula psi = translate(inst);
    CHECK(psi.n == inst.n);
    CHECK(psi.clauses.size() == 4 * inst.clauses.size());
    CHECK(oracle::cnf_sat_exhaustive(psi) == inst.label);
  }
}

TEST_CASE("translate: assignment-level equivalence on small instances") {
  SplitMix64 rng(12);
  const XorInstance inst = generate_instance(8, 10, false, rng);
  const CnfFormula psi = translate(inst);
  for (std::uint64_t a = 0; a < (1u << 8); ++a) {
    bool xor_ok = true;
    for (const XorClause &c : inst.clauses) {
      const bool parity =
          (((a >> c.vars[0]) ^ (a >> c.vars[1]) ^ (a >> c.vars[2])) & 1) != 0;
      if (parity != c.rhs) {
        xor_ok = false;
        break;
      }
    }
    bool cnf_ok = true;
    for (const Clause3 &cl : psi.clauses) {
      bool sat = false;
      for (int i = 0; i < 3; ++i)
        if ((((a >> cl.vars[i]) & 1) != 0) != cl.neg[i]) {
          sat = true;
          break;
        }
      if (!sat) {
        cnf_ok = false;
        break;
      }
    }
    CHECK(xor_ok == cnf_ok);
  }
}

TEST_CASE("invert: exact round trip on generated instances") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const XorInstance inst = generate_instance(50, 55, trial % 2 == 0, rng);
    const XorSkeleton back = invert(translate(inst));
    CHECK(back.n == inst.n);
    CHECK(back.clauses == inst.clauses);
  }
}

TEST_CASE("invert: rejects formulas outside the image window") {
  const XorClause c{{0, 1, 2}, false};
  CnfFormula psi;
  psi.n = 3;
  for (const Clause3 &cl : xor_to_block(c)) psi.clauses.push_back(cl);

  SUBCASE("clause count not divisible by four") {
    psi.clauses.pop_back();
    CHECK_THROWS_AS((void)invert(psi), NotInWindowError);
  }
  SUBCASE("mixed variable triples inside a block") {
    psi.clauses[2].vars = {0, 1, 3};
    psi.n = 4;
    CHECK_THROWS_AS((void)invert(psi), NotInWindowError);
  }
  SUBCASE("duplicated sign pattern") {
    psi.clauses[3] = psi.clauses[0];
    CHECK_THROWS_AS((void)invert(psi), NotInWindowError);
  }
  SUBCASE("sign patterns of mixed parity") {
    psi.clauses[0].neg = {false, false, false};  // even point joins odd block
    CHECK_THROWS_AS((void)invert(psi), NotInWindowError);
  }
  SUBCASE("non-ascending variables") {
    for (Clause3 &cl : psi.clauses) cl.vars = {2, 1, 0};
    CHECK_THROWS_AS((void)invert(psi), NotInWindowError);
  }
  SUBCASE("error message carries the block index") {
    psi.clauses[3] = psi.clauses[0];
    try {
      (void)invert(psi);
      FAIL("expected NotInWindowError");
    } catch (const NotInWindowError &e) {
      CHECK(e.block() == 0);
    }
  }
}

TEST_CASE("dimacs: write/read round trip with metadata") {
  SplitMix64 rng(14);
  const XorInstance inst = generate_instance(30, 33, true, rng);
  const CnfFormula psi = translate(inst);

  DimacsMeta meta;
  meta.seed = 424242;
  meta.rep = 7;
  meta.m_xor = inst.clauses.size();
  meta.tprime = inst.corank;
  meta.label = inst.label ? 1 : 0;

  std::ostringstream os;
  write_dimacs(psi, os, &meta);

  DimacsMeta got;
  std::istringstream is(os.str());
  const CnfFormula back = read_dimacs(is, &got);
  CHECK(back.n == psi.n);
  CHECK(back.clauses == psi.clauses);
  CHECK(got.seed == meta.seed);
  CHECK(got.rep == meta.rep);
  CHECK(got.m_xor == meta.m_xor);
  CHECK(got.tprime == meta.tprime);
  CHECK(got.label == meta.label);

  // the serialized text is byte-stable
  std::ostringstream os2;
  write_dimacs(psi, os2, &meta);
  CHECK(os.str() == os2.str());
}

TEST_CASE("dimacs: parse errors carry line numbers") {
  auto parse = [](const std::string &text) {
    std::istringstream is(text);
    return read_dimacs(is);
  };
  auto expect_error_at = [&](const std::string &text, std::size_t line) {
    try {
      (void)parse(text);
      FAIL("expected DimacsParseError");
    } catch (const DimacsParseError &e) {
      CHECK(e.line() == line);
    }
  };

  expect_error_at("1 2 3 0\n", 1);                       // clause before header
  expect_error_at("p cnf 3 1\np cnf 3 1\n1 2 3 0\n", 2); // duplicate header
  expect_error_at("p dnf 3 1\n1 2 3 0\n", 1);            // wrong format tag
  expect_error_at("p cnf 3 1\n1 2 0\n", 2);              // not a 3-clause
  expect_error_at("p cnf 3 1\n1 2 9 0\n", 2);            // var out of range
  expect_error_at("p cnf 3 1\n1 2 x 0\n", 2);            // junk token
  expect_error_at("p cnf 3 2\n1 2 3 0\n", 2);            // count mismatch
  expect_error_at("p cnf 3 1\n1 2 3\n", 2);              // unterminated clause
  expect_error_at("", 0);                                // empty input
}

TEST_CASE("xor exchange format: round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "xb_translate_test";
  fs::create_directories(dir);
  const std::string path = (dir / "inst.xor").string();

  SplitMix64 rng(15);
  const XorInstance inst = generate_instance(25, 28, false, rng);
  XorSkeleton phi{inst.n, inst.clauses};
  write_xor_file(phi, path);
  const XorSkeleton back = read_xor_file(path);
  CHECK(back.n == phi.n);
  CHECK(back.clauses == phi.clauses);

  {
    std::ofstream bad(path, std::ios::binary);
    bad << "p xor 5 1\n3 2 1 0\n";  // descending variables
  }
  CHECK_THROWS_AS((void)read_xor_file(path), DimacsParseError);
  {
    std::ofstream bad(path, std::ios::binary);
    bad << "p xor 5 2\n1 2 3 1\n";  // count mismatch
  }
  CHECK_THROWS_AS((void)read_xor_file(path), DimacsParseError);
  CHECK_THROWS_AS((void)read_xor_file((dir / "missing.xor").string()),
                  std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("dimacs_file_name pads the rep to three digits") {
  CHECK(dimacs_file_name(250, 0) == "bal3xor_n250_rep000.cnf");
  CHECK(dimacs_file_name(250, 7) == "bal3xor_n250_rep007.cnf");
  CHECK(dimacs_file_name(500, 42) == "bal3xor_n500_rep042.cnf");
  CHECK(dimacs_file_name(40, 123) == "bal3xor_n40_rep123.cnf");
  CHECK(dimacs_file_name(40, 1234) == "bal3xor_n40_rep1234.cnf");
}

TEST_CASE("encoding_length uses ceil(log2 n) bits per index") {
  CHECK(encoding_length(2, 10) == 10);    // 1 bit per index
  CHECK(encoding_length(250, 1) == 8);    // ceil(log2 250) = 8
  CHECK(encoding_length(256, 1) == 8);
  CHECK(encoding_length(257, 1) == 9);
  CHECK(encoding_length(500, 550) == 550 * 9);
  CHECK(encoding_length(1, 100) == 0);
}

TEST_CASE("dimacs file variants match the stream forms byte for byte") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "xb_translate_file";
  fs::create_directories(dir);
  const std::string path = (dir / dimacs_file_name(20, 3)).string();

  SplitMix64 rng(16);
  const XorInstance inst = generate_instance(20, 22, true, rng);
  const CnfFormula psi = translate(inst);
  DimacsMeta meta;
  meta.seed = 99;
  meta.rep = 3;
  write_dimacs_file(psi, path, &meta);

  std::ostringstream os;
  write_dimacs(psi, os, &meta);
  CHECK(slurp(path) == os.str());

  DimacsMeta got;
  const CnfFormula back = read_dimacs_file(path, &got);
  CHECK(back.clauses == psi.clauses);
  CHECK(got.seed == 99);
  fs::remove_all(dir);
}

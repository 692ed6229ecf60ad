#include "xb/translate.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <ostream>
#include <sstream>

namespace xb {

std::array<Clause3, 4> xor_to_block(const XorClause &c) {
  // A sign triple s (1 = negated) read as an assignment is the unique point
  // falsified by that clause. Forbidden points are those with parity != rhs,
  // i.e. popcount(s) % 2 == 1 - rhs. Ascending s gives the canonical order.
  std::array<Clause3, 4> block;
  std::size_t k = 0;
  for (unsigned s = 0; s < 8; ++s) {
    if ((std::popcount(s) & 1) == (c.rhs ? 1 : 0)) continue;
    Clause3 cl;
    cl.vars = c.vars;
    for (int i = 0; i < 3; ++i) cl.neg[i] = (s >> (2 - i)) & 1;
    block[k++] = cl;
  }
  return block;
}

static CnfFormula translate_clauses(std::uint32_t n,
                                    const std::vector<XorClause> &clauses) {
  CnfFormula psi;
  psi.n = n;
  psi.clauses.reserve(4 * clauses.size());
  for (const XorClause &c : clauses)
    for (const Clause3 &cl : xor_to_block(c)) psi.clauses.push_back(cl);
  return psi;
}

CnfFormula translate(const XorInstance &phi) {
  return translate_clauses(phi.n, phi.clauses);
}

CnfFormula translate(const XorSkeleton &phi) {
  return translate_clauses(phi.n, phi.clauses);
}

XorSkeleton invert(const CnfFormula &psi) {
  if (psi.clauses.size() % 4 != 0)
    throw NotInWindowError(psi.clauses.size() / 4,
                           "clause count not divisible by 4");
  XorSkeleton phi;
  phi.n = psi.n;
  phi.clauses.reserve(psi.clauses.size() / 4);
  for (std::size_t blk = 0; blk * 4 < psi.clauses.size(); ++blk) {
    const Clause3 &first = psi.clauses[4 * blk];
    if (!(first.vars[0] < first.vars[1] && first.vars[1] < first.vars[2]))
      throw NotInWindowError(blk, "literal variables not strictly ascending");
    unsigned seen = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      const Clause3 &cl = psi.clauses[4 * blk + j];
      if (cl.vars != first.vars)
        throw NotInWindowError(blk, "mixed variable triples in block");
      const unsigned s = (cl.neg[0] << 2) | (cl.neg[1] << 1) | cl.neg[2];
      seen |= 1u << s;
    }
    // A window block forbids exactly the four points whose parity differs
    // from rhs: odd sign triples {1,2,4,7} for rhs = 0, even {0,3,5,6} for
    // rhs = 1.
    bool rhs;
    if (seen == 0b10010110u)
      rhs = false;
    else if (seen == 0b01101001u)
      rhs = true;
    else
      throw NotInWindowError(blk, "sign patterns are not a canonical XOR block");
    phi.clauses.push_back(XorClause{first.vars, rhs});
  }
  return phi;
}

void write_xor_file(const XorSkeleton &phi, const std::string &path,
                    const DimacsMeta *meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  if (meta) {
    if (meta->seed) out << "c seed=" << *meta->seed << "\n";
    if (meta->rep) out << "c rep=" << *meta->rep << "\n";
    if (meta->tprime) out << "c tprime=" << *meta->tprime << "\n";
    if (meta->label) out << "c label=" << *meta->label << "\n";
  }
  out << "p xor " << phi.n << " " << phi.clauses.size() << "\n";
  for (const XorClause &c : phi.clauses)
    out << c.vars[0] + 1 << " " << c.vars[1] + 1 << " " << c.vars[2] + 1 << " "
        << (c.rhs ? 1 : 0) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

XorSkeleton read_xor_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  XorSkeleton phi;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t declared = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream is(line);
      std::string p, fmt;
      std::int64_t n = -1, mc = -1;
      if (!(is >> p >> fmt >> n >> mc) || fmt != "xor" || n < 0 || mc < 0)
        throw DimacsParseError(lineno, "bad xor problem line: " + line);
      phi.n = static_cast<std::uint32_t>(n);
      declared = static_cast<std::uint64_t>(mc);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw DimacsParseError(lineno, "clause before problem line");
    std::istringstream is(line);
    std::int64_t a, b, c, rhs;
    if (!(is >> a >> b >> c >> rhs) || rhs < 0 || rhs > 1)
      throw DimacsParseError(lineno, "bad xor clause line: " + line);
    XorClause cl;
    cl.vars = {static_cast<std::uint32_t>(a - 1),
               static_cast<std::uint32_t>(b - 1),
               static_cast<std::uint32_t>(c - 1)};
    cl.rhs = rhs == 1;
    if (a < 1 || b <= a || c <= b || c > phi.n)
      throw DimacsParseError(lineno, "xor clause variables must be ascending");
    phi.clauses.push_back(cl);
  }
  if (!have_header) throw DimacsParseError(lineno, "missing problem line");
  if (phi.clauses.size() != declared)
    throw DimacsParseError(lineno, "clause count mismatch");
  return phi;
}

std::string dimacs_file_name(std::uint32_t n, std::uint32_t rep) {
  std::ostringstream os;
  os << "bal3xor_n" << n << "_rep";
  os.width(3);
  os.fill('0');
  os << rep << ".cnf";
  return os.str();
}

std::uint64_t encoding_length(std::uint32_t n, std::uint64_t m) {
  if (n <= 1) return 0;
  return m * static_cast<std::uint64_t>(std::bit_width(n - 1));
}

void write_dimacs(const CnfFormula &psi, std::ostream &out,
                  const DimacsMeta *meta) {
  if (meta) {
    if (meta->seed) out << "c seed=" << *meta->seed << "\n";
    if (meta->rep) out << "c rep=" << *meta->rep << "\n";
    if (meta->m_xor) out << "c m_xor=" << *meta->m_xor << "\n";
    if (meta->tprime) out << "c tprime=" << *meta->tprime << "\n";
    if (meta->label) out << "c label=" << *meta->label << "\n";
  }
  out << "p cnf " << psi.n << " " << psi.clauses.size() << "\n";
  for (const Clause3 &cl : psi.clauses) {
    for (int i = 0; i < 3; ++i) {
      if (i) out << " ";
      out << (cl.neg[i] ? -static_cast<std::int64_t>(cl.vars[i]) - 1
                        : static_cast<std::int64_t>(cl.vars[i]) + 1);
    }
    out << " 0\n";
  }
}

void write_dimacs_file(const CnfFormula &psi, const std::string &path,
                       const DimacsMeta *meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_dimacs(psi, out, meta);
  if (!out) throw std::runtime_error("write failed: " + path);
}

static void parse_meta_comment(const std::string &line, DimacsMeta *meta) {
  if (!meta) return;
  std::istringstream is(line.substr(1));
  std::string kv;
  while (is >> kv) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      if (key == "seed") meta->seed = std::stoull(val);
      else if (key == "rep") meta->rep = std::stoul(val);
      else if (key == "m_xor") meta->m_xor = std::stoul(val);
      else if (key == "tprime") meta->tprime = std::stoul(val);
      else if (key == "label") meta->label = std::stoi(val);
    } catch (const std::exception &) {
      // unknown or malformed comment values are ignored
    }
  }
}

CnfFormula read_dimacs(std::istream &in, DimacsMeta *meta) {
  CnfFormula psi;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::uint64_t declared_clauses = 0;

  std::vector<std::int64_t> lits;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      parse_meta_comment(line, meta);
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream is(line);
      std::string p, fmt;
      std::int64_t n = -1, mc = -1;
      if (!(is >> p >> fmt >> n >> mc) || fmt != "cnf" || n < 0 || mc < 0)
        throw DimacsParseError(lineno, "bad problem line: " + line);
      if (have_header) throw DimacsParseError(lineno, "duplicate problem line");
      have_header = true;
      psi.n = static_cast<std::uint32_t>(n);
      declared_clauses = static_cast<std::uint64_t>(mc);
      continue;
    }
    if (!have_header)
      throw DimacsParseError(lineno, "clause before problem line");
    std::istringstream is(line);
    std::int64_t lit;
    while (is >> lit) {
      if (lit == 0) {
        if (lits.size() != 3)
          throw DimacsParseError(lineno, "clause is not a 3-clause");
        Clause3 cl;
        for (int i = 0; i < 3; ++i) {
          const std::int64_t v = std::abs(lits[i]) - 1;
          if (v < 0 || v >= psi.n)
            throw DimacsParseError(lineno, "variable index out of range");
          cl.vars[i] = static_cast<std::uint32_t>(v);
          cl.neg[i] = lits[i] < 0;
        }
        psi.clauses.push_back(cl);
        lits.clear();
      } else {
        lits.push_back(lit);
      }
    }
    if (is.fail() && !is.eof())
      throw DimacsParseError(lineno, "unparsable token in clause line");
  }
  if (!have_header) throw DimacsParseError(lineno, "missing problem line");
  if (!lits.empty())
    throw DimacsParseError(lineno, "unterminated clause at end of file");
  if (psi.clauses.size() != declared_clauses)
    throw DimacsParseError(
        lineno, "header declares " + std::to_string(declared_clauses) +
                    " clauses, found " + std::to_string(psi.clauses.size()));
  return psi;
}

CnfFormula read_dimacs_file(const std::string &path, DimacsMeta *meta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_dimacs(in, meta);
}

}  // namespace xb

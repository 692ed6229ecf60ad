#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xb/sampler.hpp"

namespace xb {

// One 3-clause; vars strictly ascending, neg[i] set when the literal on
// vars[i] is negated.
struct Clause3 {
  std::array<std::uint32_t, 3> vars;
  std::array<bool, 3> neg;

  friend bool operator==(const Clause3 &, const Clause3 &) = default;
};

// 3CNF in image-window form: clauses come in blocks of four, block i encoding
// XOR clause i over one shared variable triple.
struct CnfFormula {
  std::uint32_t n = 0;
  std::vector<Clause3> clauses;
};

// Clause list plus right-hand side, without the u / label fields that need
// H(A) to recompute.
struct XorSkeleton {
  std::uint32_t n = 0;
  std::vector<XorClause> clauses;
};

class NotInWindowError : public std::runtime_error {
 public:
  NotInWindowError(std::size_t block, const std::string &what)
      : std::runtime_error("block " + std::to_string(block) + ": " + what),
        block_(block) {}
  std::size_t block() const { return block_; }

 private:
  std::size_t block_;
};

class DimacsParseError : public std::runtime_error {
 public:
  DimacsParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// The four clauses forbidding the assignments of the triple whose parity
// differs from rhs, in lexicographic sign-triple order (0 = positive).
std::array<Clause3, 4> xor_to_block(const XorClause &c);

CnfFormula translate(const XorInstance &phi);
CnfFormula translate(const XorSkeleton &phi);

// Exact inverse on the image window; throws NotInWindowError otherwise.
XorSkeleton invert(const CnfFormula &psi);

// Optional self-describing DIMACS comment header. Every field is optional on
// read; the verifier recomputes labels from content regardless.
struct DimacsMeta {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> rep;
  std::optional<std::uint32_t> m_xor;   // preimage clause count
  std::optional<std::uint32_t> tprime;
  std::optional<int> label;
};

void write_dimacs(const CnfFormula &psi, std::ostream &out,
                  const DimacsMeta *meta = nullptr);
void write_dimacs_file(const CnfFormula &psi, const std::string &path,
                       const DimacsMeta *meta = nullptr);

CnfFormula read_dimacs(std::istream &in, DimacsMeta *meta = nullptr);
CnfFormula read_dimacs_file(const std::string &path,
                            DimacsMeta *meta = nullptr);

// Plain-text 3XOR exchange format (tool plumbing, not an export artifact):
// optional `c` comments, header `p xor <n> <m>`, then one clause per line as
// three 1-based variable indices followed by the rhs bit.
void write_xor_file(const XorSkeleton &phi, const std::string &path,
                    const DimacsMeta *meta = nullptr);
XorSkeleton read_xor_file(const std::string &path);

// bal3xor_n{n}_rep{rrr}.cnf, rep zero-padded to 3 digits.
std::string dimacs_file_name(std::uint32_t n, std::uint32_t rep);

// Encoding-length convention: N = m * ceil(log2 n) index bits.
std::uint64_t encoding_length(std::uint32_t n, std::uint64_t m);

}  // namespace xb

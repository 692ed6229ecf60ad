#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace xb {

// Literal: variable index with sign. pos(v) = 2v, neg(v) = 2v+1.
using Lit = std::uint32_t;

inline Lit pos_lit(std::uint32_t v) { return 2 * v; }
inline Lit neg_lit(std::uint32_t v) { return 2 * v + 1; }
inline Lit negate(Lit l) { return l ^ 1u; }
inline std::uint32_t lit_var(Lit l) { return l >> 1; }
inline bool lit_sign(Lit l) { return l & 1u; }  // true = negated

struct TwoSatInstance {
  std::uint32_t n = 0;
  std::vector<std::pair<Lit, Lit>> clauses;
};

// Implication-graph 2SAT: each clause (a v b) contributes ~a -> b and
// ~b -> a; unsatisfiable iff some variable shares an SCC with its negation.
// Returns a witness assignment when satisfiable, nullopt otherwise. The SCC
// pass is iterative Tarjan, so deep graphs cannot blow the call stack.
std::optional<std::vector<bool>> decide(const TwoSatInstance &inst);

bool check_witness(const TwoSatInstance &inst, const std::vector<bool> &assign);

// DIMACS CNF restricted to 2-literal clauses; throws on wider clauses.
TwoSatInstance read_2sat_dimacs(std::istream &in);
TwoSatInstance read_2sat_dimacs_file(const std::string &path);

}  // namespace xb

#include "xb/twosat.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace xb {

namespace {

// Iterative Tarjan over the implication graph; comp[v] is the SCC id in
// reverse topological order (lower id = later in topological order).
struct TarjanState {
  const std::vector<std::vector<Lit>> &adj;
  std::vector<std::int32_t> index, lowlink, comp;
  std::vector<bool> on_stack;
  std::vector<Lit> stack;
  std::int32_t next_index = 0, next_comp = 0;

  explicit TarjanState(const std::vector<std::vector<Lit>> &adjacency)
      : adj(adjacency),
        index(adjacency.size(), -1),
        lowlink(adjacency.size(), 0),
        comp(adjacency.size(), -1),
        on_stack(adjacency.size(), false) {}

  void run(Lit root) {
    struct Frame {
      Lit v;
      std::size_t child = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({root});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame &f = frames.back();
      if (f.child < adj[f.v].size()) {
        const Lit w = adj[f.v][f.child++];
        if (index[w] < 0) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w});
        } else if (on_stack[w] && index[w] < lowlink[f.v]) {
          lowlink[f.v] = index[w];
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          Lit w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
          } while (w != f.v);
          ++next_comp;
        }
        const Lit done = f.v;
        frames.pop_back();
        if (!frames.empty() && lowlink[done] < lowlink[frames.back().v])
          lowlink[frames.back().v] = lowlink[done];
      }
    }
  }
};

}  // namespace

std::optional<std::vector<bool>> decide(const TwoSatInstance &inst) {
  const std::size_t nodes = 2 * static_cast<std::size_t>(inst.n);
  std::vector<std::vector<Lit>> adj(nodes);
  for (const auto &[a, b] : inst.clauses) {
    if (lit_var(a) >= inst.n || lit_var(b) >= inst.n)
      throw std::invalid_argument("2SAT clause references variable >= n");
    adj[negate(a)].push_back(b);
    adj[negate(b)].push_back(a);
  }

  TarjanState t(adj);
  for (Lit v = 0; v < nodes; ++v)
    if (t.index[v] < 0) t.run(v);

  for (std::uint32_t v = 0; v < inst.n; ++v)
    if (t.comp[pos_lit(v)] == t.comp[neg_lit(v)]) return std::nullopt;

  // Tarjan ids come in reverse topological order, so taking the literal
  // whose component has the smaller id sets it true consistently.
  std::vector<bool> assign(inst.n);
  for (std::uint32_t v = 0; v < inst.n; ++v)
    assign[v] = t.comp[pos_lit(v)] < t.comp[neg_lit(v)];
  if (!check_witness(inst, assign))
    throw std::logic_error("2SAT witness failed certification");
  return assign;
}

bool check_witness(const TwoSatInstance &inst,
                   const std::vector<bool> &assign) {
  if (assign.size() != inst.n) return false;
  for (const auto &[a, b] : inst.clauses) {
    const bool va = assign[lit_var(a)] != lit_sign(a);
    const bool vb = assign[lit_var(b)] != lit_sign(b);
    if (!va && !vb) return false;
  }
  return true;
}

TwoSatInstance read_2sat_dimacs(std::istream &in) {
  TwoSatInstance inst;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::vector<std::int64_t> lits;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream is(line);
      std::string p, fmt;
      std::int64_t n = -1, mc = -1;
      if (!(is >> p >> fmt >> n >> mc) || fmt != "cnf" || n < 0)
        throw std::runtime_error("bad problem line at " +
                                 std::to_string(lineno));
      inst.n = static_cast<std::uint32_t>(n);
      have_header = true;
      continue;
    }
    if (!have_header)
      throw std::runtime_error("clause before problem line at " +
                               std::to_string(lineno));
    std::istringstream is(line);
    std::int64_t l;
    while (is >> l) {
      if (l == 0) {
        if (lits.size() != 2)
          throw std::runtime_error("non-2-literal clause at line " +
                                   std::to_string(lineno));
        auto to_lit = [&](std::int64_t x) {
          const std::uint32_t v = static_cast<std::uint32_t>(std::abs(x) - 1);
          return x > 0 ? pos_lit(v) : neg_lit(v);
        };
        inst.clauses.emplace_back(to_lit(lits[0]), to_lit(lits[1]));
        lits.clear();
      } else {
        lits.push_back(l);
      }
    }
  }
  if (!lits.empty()) throw std::runtime_error("unterminated clause at EOF");
  return inst;
}

TwoSatInstance read_2sat_dimacs_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_2sat_dimacs(in);
}

}  // namespace xb

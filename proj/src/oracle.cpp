#include "bvlab/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace bvlab {

ordered_json verdict_to_json(const OracleVerdict& v) {
  ordered_json j;
  j["answer"] = v.yes ? "YES" : "NO";
  if (v.yes) {
    ordered_json w = ordered_json::array();
    for (std::size_t x : v.witness) w.push_back(x + 1);
    j["witness"] = std::move(w);
    if (v.perm) j["perm"] = perm_to_json(*v.perm);
  }
  j["nodes_explored"] = v.nodes;
  return j;
}

bool eq1_holds(const InstancePair& pair, const PermMatrix& x) {
  const std::size_t n = pair.n();
  if (x.size() != n) throw std::invalid_argument("eq1_holds: permutation size differs from n");
  const RatMatrix xm = x.to_matrix();
  const RatMatrix full = xm.transpose() * pair.G * xm;
  const RatMatrix lhs = full.top_left(pair.S.rows(), pair.S.cols());
  return pair.relation == Relation::Equal ? lhs == pair.S : lhs.geq(pair.S);
}

PermMatrix extend_to_permutation(const std::vector<std::size_t>& map, std::size_t n) {
  if (map.size() > n) throw std::invalid_argument("extend_to_permutation: map longer than n");
  std::vector<bool> used(n, false);
  for (std::size_t h : map) {
    if (h >= n || used[h]) throw std::invalid_argument("extend_to_permutation: map is not injective");
    used[h] = true;
  }
  std::vector<std::size_t> image = map;
  std::size_t next = 0;
  while (image.size() < n) {
    while (used[next]) ++next;
    used[next] = true;
    image.push_back(next);
  }
  return PermMatrix(std::move(image));
}

PermMatrix eq1_matrix_of_map(const std::vector<std::size_t>& map, std::size_t n) {
  return extend_to_permutation(map, n).inverse();
}

namespace {

using IntMatrix = std::vector<std::vector<long>>;

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_num().get_si();
  return out;
}

struct SubgiProblem {
  IntMatrix g, s;
  std::size_t n = 0;
  bool equal = false;
  std::vector<long> g_out, g_in, s_out, s_in;
  std::vector<std::size_t> order;  // pattern vertices in search order
};

bool rel(const SubgiProblem& p, long host, long pattern) { return p.equal ? host == pattern : host >= pattern; }

class SubgiSearch {
 public:
  explicit SubgiSearch(const SubgiProblem& p)
      : p_(p), map_(p.s.size(), p.n), used_(p.n, false) {}

  bool candidate(std::size_t depth, std::size_t h) const {
    const std::size_t v = p_.order[depth];
    if (used_[h]) return false;
    if (!rel(p_, p_.g_out[h], p_.s_out[v]) || !rel(p_, p_.g_in[h], p_.s_in[v])) return false;
    if (!rel(p_, p_.g[h][h], p_.s[v][v])) return false;
    for (std::size_t d = 0; d < depth; ++d) {
      const std::size_t u = p_.order[d];
      const std::size_t hu = map_[u];
      if (!rel(p_, p_.g[h][hu], p_.s[v][u]) || !rel(p_, p_.g[hu][h], p_.s[u][v])) return false;
    }
    return true;
  }

  bool dfs(std::size_t depth) {
    if (depth == p_.order.size()) return true;
    for (std::size_t h = 0; h < p_.n; ++h) {
      ++nodes;
      if (!candidate(depth, h)) continue;
      place(depth, h);
      if (dfs(depth + 1)) return true;
      remove(depth);
    }
    return false;
  }

  void place(std::size_t depth, std::size_t h) {
    map_[p_.order[depth]] = h;
    used_[h] = true;
  }
  void remove(std::size_t depth) {
    used_[map_[p_.order[depth]]] = false;
    map_[p_.order[depth]] = p_.n;
  }

  const std::vector<std::size_t>& map() const { return map_; }
  std::uint64_t nodes = 0;

 private:
  const SubgiProblem& p_;
  std::vector<std::size_t> map_;
  std::vector<bool> used_;
};

std::vector<std::size_t> search_order(const SubgiProblem& p) {
  const std::size_t ps = p.s.size();
  std::vector<bool> active(ps, false);
  for (std::size_t v = 0; v < ps; ++v) active[v] = p.equal || p.s_out[v] + p.s_in[v] > 0;
  std::vector<std::size_t> order;
  std::vector<bool> placed(ps, false);
  auto links = [&](std::size_t v) {
    long c = 0;
    for (std::size_t u : order) c += (p.s[v][u] > 0) + (p.s[u][v] > 0);
    return c;
  };
  for (;;) {
    std::size_t best = ps;
    for (std::size_t v = 0; v < ps; ++v) {
      if (!active[v] || placed[v]) continue;
      if (best == ps) {
        best = v;
        continue;
      }
      const long lv = links(v), lb = links(best);
      const long dv = p.s_out[v] + p.s_in[v], db = p.s_out[best] + p.s_in[best];
      if (lv > lb || (lv == lb && dv > db)) best = v;
    }
    if (best == ps) break;
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace

OracleVerdict subgi_oracle(const InstancePair& pair, const SubgiOptions& options) {
  pair.validate();
  SubgiProblem p;
  p.g = to_int(pair.G);
  p.s = to_int(pair.S);
  p.n = pair.n();
  p.equal = pair.relation == Relation::Equal;
  const std::size_t ps = p.s.size();
  p.g_out.assign(p.n, 0);
  p.g_in.assign(p.n, 0);
  p.s_out.assign(ps, 0);
  p.s_in.assign(ps, 0);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      p.g_out[i] += p.g[i][j];
      p.g_in[j] += p.g[i][j];
    }
  for (std::size_t i = 0; i < ps; ++i)
    for (std::size_t j = 0; j < ps; ++j) {
      p.s_out[i] += p.s[i][j];
      p.s_in[j] += p.s[i][j];
    }
  p.order = search_order(p);

  OracleVerdict out;
  std::optional<std::vector<std::size_t>> found;
  if (p.order.empty()) {
    found = std::vector<std::size_t>(ps, p.n);
  } else {
    std::vector<std::optional<std::vector<std::size_t>>> hits(p.n);
    std::vector<std::uint64_t> nodes(p.n, 0);
    std::atomic<std::size_t> best{p.n};
    auto run = [&](std::size_t h) {
      if (h > best.load()) return;
      SubgiSearch s(p);
      nodes[h] = 1;
      if (!s.candidate(0, h)) return;
      s.place(0, h);
      const bool ok = s.dfs(1);
      nodes[h] += s.nodes;
      if (ok) {
        hits[h] = s.map();
        std::size_t cur = best.load();
        while (h < cur && !best.compare_exchange_weak(cur, h)) {
        }
      }
    };
    if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t h = 0; h < p.n; ++h) run(h);
    } else {
      for (std::size_t h = 0; h < p.n && best.load() == p.n; ++h) run(h);
    }
    for (std::size_t h = 0; h < p.n; ++h) {
      out.nodes += nodes[h];
      if (hits[h] && !found) found = hits[h];
    }
  }
  if (!found) return out;

  // Unconstrained pattern vertices take the unused hosts in increasing order.
  std::vector<std::size_t> map = *found;
  std::vector<bool> used(p.n, false);
  for (std::size_t h : map)
    if (h < p.n) used[h] = true;
  std::size_t next = 0;
  for (auto& h : map) {
    if (h < p.n) continue;
    while (used[next]) ++next;
    h = next;
    used[next] = true;
  }
  out.yes = true;
  out.perm = eq1_matrix_of_map(map, p.n);
  if (!eq1_holds(pair, *out.perm)) throw std::logic_error("subgi_oracle: witness failed substitution");
  map.resize(pair.m);
  out.witness = std::move(map);
  return out;
}

OracleVerdict subgi_oracle_exhaustive(const InstancePair& pair) {
  pair.validate();
  const std::size_t n = pair.n();
  if (n > 9) throw CapExceeded("exhaustive oracle limited to n <= 9");
  OracleVerdict out;
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  do {
    ++out.nodes;
    const PermMatrix x(image);
    if (eq1_holds(pair, x)) {
      out.yes = true;
      out.perm = x;
      const PermMatrix map = x.inverse();
      out.witness.assign(map.image().begin(), map.image().begin() + static_cast<std::ptrdiff_t>(pair.m));
      return out;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

OracleVerdict sat_oracle(const CnfFormula& f) {
  if (f.num_vars > 20) throw CapExceeded("sat_oracle limited to 20 variables");
  OracleVerdict out;
  const std::size_t v = f.num_vars;
  std::vector<bool> assignment(v);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << v); ++bits) {
    ++out.nodes;
    for (std::size_t i = 0; i < v; ++i) assignment[i] = ((bits >> (v - 1 - i)) & 1U) != 0;
    if (f.satisfied_by(assignment)) {
      out.yes = true;
      for (bool b : assignment) out.witness.push_back(b ? 1 : 0);
      return out;
    }
  }
  return out;
}

namespace {

void check_graph_cap(const DigraphInstance& g) {
  if (g.n > 10) throw CapExceeded("graph oracles limited to n <= 10");
}

bool hamiltonian(const IntMatrix& a, std::vector<std::size_t>& path, std::vector<bool>& used, bool cycle,
                 std::uint64_t& nodes) {
  const std::size_t n = a.size();
  if (path.size() == n) return !cycle || a[path.back()][path.front()] > 0;
  for (std::size_t w = 0; w < n; ++w) {
    ++nodes;
    if (used[w] || a[path.back()][w] == 0) continue;
    used[w] = true;
    path.push_back(w);
    if (hamiltonian(a, path, used, cycle, nodes)) return true;
    path.pop_back();
    used[w] = false;
  }
  return false;
}

OracleVerdict hamiltonian_oracle(const DigraphInstance& g, bool cycle) {
  check_graph_cap(g);
  OracleVerdict out;
  const IntMatrix a = to_int(g.adjacency());
  // A cycle may start anywhere, so vertex 0 suffices; a path tries every start.
  const std::size_t starts = cycle ? std::min<std::size_t>(g.n, 1) : g.n;
  for (std::size_t s = 0; s < starts; ++s) {
    std::vector<std::size_t> path{s};
    std::vector<bool> used(g.n, false);
    used[s] = true;
    if (hamiltonian(a, path, used, cycle, out.nodes)) {
      out.yes = true;
      out.witness = std::move(path);
      return out;
    }
  }
  return out;
}

}  // namespace

OracleVerdict hc_oracle(const DigraphInstance& g) {
  if (g.n < 2) throw std::invalid_argument("hc_oracle needs n >= 2");
  return hamiltonian_oracle(g, true);
}

OracleVerdict hp_oracle(const DigraphInstance& g) { return hamiltonian_oracle(g, false); }

namespace {

bool extend_clique(const IntMatrix& a, std::size_t m, std::size_t from, std::vector<std::size_t>& set,
                   std::uint64_t& nodes) {
  if (set.size() == m) return true;
  for (std::size_t v = from; v < a.size(); ++v) {
    ++nodes;
    const bool joined = std::all_of(set.begin(), set.end(), [&](std::size_t u) { return a[u][v] > 0 && a[v][u] > 0; });
    if (!joined) continue;
    set.push_back(v);
    if (extend_clique(a, m, v + 1, set, nodes)) return true;
    set.pop_back();
  }
  return false;
}

bool extend_matching(const IntMatrix& a, std::size_t pairs, std::size_t from, std::vector<bool>& used,
                     std::vector<std::size_t>& chosen, std::uint64_t& nodes) {
  if (chosen.size() == 2 * pairs) return true;
  const std::size_t n = a.size();
  for (std::size_t v = from; v < n; ++v) {
    if (used[v]) continue;
    for (std::size_t w = 0; w < n; ++w) {
      ++nodes;
      if (w == v || used[w]) continue;
      const bool forward = a[v][w] > 0;
      if (!forward && a[w][v] == 0) continue;
      // Record the pair in arc direction.
      used[v] = used[w] = true;
      chosen.push_back(forward ? v : w);
      chosen.push_back(forward ? w : v);
      if (extend_matching(a, pairs, v + 1, used, chosen, nodes)) return true;
      chosen.resize(chosen.size() - 2);
      used[v] = used[w] = false;
    }
  }
  return false;
}

}  // namespace

OracleVerdict clique_oracle(const DigraphInstance& g, std::size_t m) {
  check_graph_cap(g);
  if (m == 0) throw std::invalid_argument("clique_oracle needs m >= 1");
  OracleVerdict out;
  if (m > g.n) return out;
  const IntMatrix a = to_int(g.adjacency());
  std::vector<std::size_t> set;
  if (extend_clique(a, m, 0, set, out.nodes)) {
    out.yes = true;
    out.witness = std::move(set);
  }
  return out;
}

OracleVerdict matching_oracle(const DigraphInstance& g, std::size_t m) {
  check_graph_cap(g);
  if (m % 2 != 0) throw std::invalid_argument("matching_oracle needs even m");
  OracleVerdict out;
  if (m > g.n) return out;
  const IntMatrix a = to_int(g.adjacency());
  std::vector<bool> used(g.n, false);
  std::vector<std::size_t> chosen;
  if (extend_matching(a, m / 2, 0, used, chosen, out.nodes)) {
    out.yes = true;
    out.witness = std::move(chosen);
  }
  return out;
}

IncidenceCheck incidence_witness_check(const IncidencePair& g, const IncidencePair& s, const PermMatrix& x,
                                       const PermMatrix& z) {
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t m = s.vertices();
  const std::size_t l = s.arcs();
  if (x.size() != n || z.size() != k || m > n || l > k) {
    throw std::invalid_argument("incidence_witness_check: size mismatch");
  }
  const RatMatrix xm = x.to_matrix();
  const RatMatrix zm = z.to_matrix();
  IncidenceCheck c;
  c.out_equation = (xm * g.out * zm).top_left(m, l) == s.out;
  c.in_equation = (xm * g.in * zm).top_left(m, l) == s.in;
  c.quadratic_condition = check_quadratic_condition(zm, l);
  return c;
}

std::optional<std::pair<PermMatrix, PermMatrix>> incidence_witness_from_map(const IncidencePair& g,
                                                                            const IncidencePair& s,
                                                                            const std::vector<std::size_t>& map) {
  const std::size_t n = g.vertices();
  const std::size_t k = g.arcs();
  const std::size_t l = s.arcs();
  // Pattern vertices beyond the map are isolated padding; they take leftover hosts.
  const std::size_t mapped = std::min(map.size(), s.vertices());
  std::vector<std::size_t> vmap(map.begin(), map.begin() + static_cast<std::ptrdiff_t>(mapped));
  PermMatrix x = extend_to_permutation(vmap, n);
  std::vector<std::size_t> image(k, k);
  std::vector<bool> column_used(k, false);
  for (std::size_t c = 0; c < l; ++c) {
    const ArcLabel& pat = s.labels[c];
    std::size_t host = k;
    for (std::size_t a = 0; a < k; ++a) {
      if (image[a] == k && g.labels[a].row == x[pat.row] && g.labels[a].col == x[pat.col]) {
        host = a;
        break;
      }
    }
    if (host == k) return std::nullopt;
    image[host] = c;
    column_used[c] = true;
  }
  std::size_t next = 0;
  for (auto& c : image) {
    if (c != k) continue;
    while (column_used[next]) ++next;
    c = next;
    column_used[next] = true;
  }
  PermMatrix z(std::move(image));
  if (!incidence_witness_check(g, s, x, z).holds()) return std::nullopt;
  return std::make_pair(std::move(x), std::move(z));
}

}  // namespace bvlab

#include "bvlab/perm_search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>

namespace bvlab {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "FOUND";
    case SearchStatus::NotFound:
      return "NOT_FOUND";
    case SearchStatus::NodeLimit:
      return "NODE_LIMIT";
  }
  return "?";
}

namespace {

struct BlockPlan {
  const VarBlock* block;
  bool by_rows;
  std::size_t size;
};

// A line is one row (or column) of a block; choosing its position fixes one 1.
struct LinePlan {
  std::size_t block;
  std::size_t line;
};

template <typename T>
struct LineCoeffs {
  std::size_t line;         // global line index
  std::vector<T> by_pos;    // coefficient of the variable at each position
};

template <typename T>
struct Row {
  std::vector<LineCoeffs<T>> lines;
  Sense sense;
  T rhs;
};

template <typename T>
struct Problem {
  std::vector<BlockPlan> blocks;
  std::vector<LinePlan> lines;
  std::vector<Row<T>> rows;
  // For each global line, (row index, slot in row.lines).
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> touches;
};

template <typename T>
class Searcher {
 public:
  Searcher(const Problem<T>& p, std::uint64_t cap) : p_(p), cap_(cap) {
    used_.assign(p.blocks.size(), 0);
    choice_.assign(p.lines.size(), 0);
    assigned_.assign(p.lines.size(), false);
    fixed_.assign(p.rows.size(), T(0));
  }

  // Runs the subtree under line 0 = first_pos (or the whole tree if there are no lines).
  SearchStatus run_branch(std::optional<std::size_t> first_pos) {
    if (p_.lines.empty()) return consistent() ? SearchStatus::Found : SearchStatus::NotFound;
    if (!first_pos) return dfs(0);
    assign(0, *first_pos);
    SearchStatus s = SearchStatus::NotFound;
    if (consistent()) s = dfs(1);
    if (s != SearchStatus::Found) unassign(0);
    return s;
  }

  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::size_t>& choice() const { return choice_; }
  const std::vector<bool>& assigned() const { return assigned_; }

 private:
  const Problem<T>& p_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> used_;
  std::vector<std::size_t> choice_;
  std::vector<bool> assigned_;
  std::vector<T> fixed_;

  void assign(std::size_t line, std::size_t pos) {
    const LinePlan& lp = p_.lines[line];
    used_[lp.block] |= std::uint64_t{1} << pos;
    choice_[line] = pos;
    assigned_[line] = true;
    for (auto [r, slot] : p_.touches[line]) fixed_[r] += p_.rows[r].lines[slot].by_pos[pos];
  }

  void unassign(std::size_t line) {
    const LinePlan& lp = p_.lines[line];
    const std::size_t pos = choice_[line];
    used_[lp.block] &= ~(std::uint64_t{1} << pos);
    assigned_[line] = false;
    for (auto [r, slot] : p_.touches[line]) fixed_[r] -= p_.rows[r].lines[slot].by_pos[pos];
  }

  bool consistent() const {
    for (std::size_t r = 0; r < p_.rows.size(); ++r) {
      const Row<T>& row = p_.rows[r];
      T lo = fixed_[r];
      T hi = fixed_[r];
      for (const auto& lc : row.lines) {
        if (assigned_[lc.line]) continue;
        const std::size_t b = p_.lines[lc.line].block;
        const std::uint64_t used = used_[b];
        bool first = true;
        T mn(0), mx(0);
        for (std::size_t pos = 0; pos < p_.blocks[b].size; ++pos) {
          if ((used >> pos) & 1U) continue;
          const T& c = lc.by_pos[pos];
          if (first) {
            mn = c;
            mx = c;
            first = false;
          } else {
            if (c < mn) mn = c;
            if (mx < c) mx = c;
          }
        }
        lo += mn;
        hi += mx;
      }
      switch (row.sense) {
        case Sense::Le:
          if (row.rhs < lo) return false;
          break;
        case Sense::Ge:
          if (hi < row.rhs) return false;
          break;
        case Sense::Eq:
          if (row.rhs < lo || hi < row.rhs) return false;
          break;
      }
    }
    return true;
  }

  SearchStatus dfs(std::size_t depth) {
    if (depth == p_.lines.size()) return SearchStatus::Found;
    const LinePlan& lp = p_.lines[depth];
    const std::size_t size = p_.blocks[lp.block].size;
    bool limited = false;
    for (std::size_t pos = 0; pos < size; ++pos) {
      if ((used_[lp.block] >> pos) & 1U) continue;
      if (++nodes_ > cap_) return SearchStatus::NodeLimit;
      assign(depth, pos);
      if (consistent()) {
        const SearchStatus s = dfs(depth + 1);
        if (s == SearchStatus::Found) return s;
        if (s == SearchStatus::NodeLimit) limited = true;
      }
      unassign(depth);
      if (limited) return SearchStatus::NodeLimit;
    }
    return SearchStatus::NotFound;
  }
};

// Integer rows are searched in int64 when every attainable partial sum stays far from overflow.
constexpr long kSafeMagnitude = std::numeric_limits<std::int64_t>::max() / 4;

template <typename T>
T convert(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return static_cast<T>(q.get_num().get_si());
  }
}

template <typename T>
Problem<T> build_problem(const ConstraintSystem& sys, const std::vector<BlockPlan>& blocks,
                         const std::vector<std::vector<std::size_t>>& line_ids,
                         const std::vector<std::pair<std::vector<std::pair<std::size_t, Rational>>, const LinearRow*>>& kept,
                         const std::vector<LinePlan>& lines) {
  Problem<T> p;
  p.blocks = blocks;
  p.lines = lines;
  p.touches.resize(lines.size());
  for (const auto& [terms, src] : kept) {
    Row<T> row;
    row.sense = src->sense;
    // The scaled rhs was stored as the last element, keyed by an out-of-range var.
    row.rhs = convert<T>(terms.back().second);
    for (std::size_t t = 0; t + 1 < terms.size(); ++t) {
      const auto& [var, coeff] = terms[t];
      const VarBlock& vb = sys.block_of(var);
      std::size_t b = 0;
      while (blocks[b].block != &vb) ++b;
      const std::size_t local = var - vb.offset;
      const std::size_t i = local / vb.cols;
      const std::size_t j = local % vb.cols;
      const std::size_t line = line_ids[b][blocks[b].by_rows ? i : j];
      const std::size_t pos = blocks[b].by_rows ? j : i;
      auto it = std::find_if(row.lines.begin(), row.lines.end(), [&](const auto& lc) { return lc.line == line; });
      if (it == row.lines.end()) {
        row.lines.push_back({line, std::vector<T>(blocks[b].size, T(0))});
        it = row.lines.end() - 1;
      }
      it->by_pos[pos] = convert<T>(coeff);
    }
    const std::size_t r = p.rows.size();
    for (std::size_t s = 0; s < row.lines.size(); ++s) p.touches[row.lines[s].line].push_back({r, s});
    p.rows.push_back(std::move(row));
  }
  return p;
}

template <typename T>
PermSearchResult search(const Problem<T>& p, const ConstraintSystem& sys, const PermSearchOptions& options) {
  PermSearchResult result;
  std::optional<Searcher<T>> winner;

  if (p.lines.empty()) {
    Searcher<T> s(p, options.node_cap);
    result.status = s.run_branch(std::nullopt);
    if (result.status == SearchStatus::Found) winner.emplace(std::move(s));
  } else {
    const std::size_t branches = p.blocks[p.lines[0].block].size;
    std::vector<std::optional<Searcher<T>>> found(branches);
    std::vector<SearchStatus> status(branches, SearchStatus::NotFound);
    std::vector<std::uint64_t> nodes(branches, 0);
    // Branches above the lowest success so far cannot change the merged answer.
    std::atomic<std::size_t> best{branches};
    auto run = [&](std::size_t pos) {
      if (pos > best.load()) return;
      Searcher<T> s(p, options.node_cap);
      status[pos] = s.run_branch(pos);
      nodes[pos] = s.nodes() + 1;
      if (status[pos] == SearchStatus::Found) {
        found[pos].emplace(std::move(s));
        std::size_t cur = best.load();
        while (pos < cur && !best.compare_exchange_weak(cur, pos)) {
        }
      }
    };
    if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t pos = 0; pos < branches; ++pos) run(pos);
    } else {
      for (std::size_t pos = 0; pos < branches && best.load() == branches; ++pos) run(pos);
    }
    bool limited = false;
    for (std::size_t pos = 0; pos < branches; ++pos) {
      result.nodes += nodes[pos];
      if (status[pos] == SearchStatus::Found && !winner) winner.emplace(std::move(*found[pos]));
      if (status[pos] == SearchStatus::NodeLimit) limited = true;
    }
    result.status = winner ? SearchStatus::Found : limited ? SearchStatus::NodeLimit : SearchStatus::NotFound;
  }

  if (winner) {
    result.witness.assign(sys.num_vars(), 0);
    std::size_t line = 0;
    for (std::size_t b = 0; b < p.blocks.size(); ++b) {
      const BlockPlan& bp = p.blocks[b];
      std::vector<std::size_t> image(bp.size, bp.size);  // line -> position
      std::vector<bool> taken(bp.size, false);
      for (; line < p.lines.size() && p.lines[line].block == b; ++line) {
        image[p.lines[line].line] = winner->choice()[line];
        taken[winner->choice()[line]] = true;
      }
      std::size_t next = 0;
      for (std::size_t l = 0; l < bp.size; ++l) {
        if (image[l] != bp.size) continue;
        while (taken[next]) ++next;
        image[l] = next;
        taken[next] = true;
      }
      std::vector<std::size_t> rows_to_cols(bp.size);
      for (std::size_t l = 0; l < bp.size; ++l) {
        if (bp.by_rows) {
          rows_to_cols[l] = image[l];
        } else {
          rows_to_cols[image[l]] = l;
        }
      }
      PermMatrix perm(rows_to_cols);
      for (std::size_t i = 0; i < bp.size; ++i) result.witness[bp.block->index(i, perm[i])] = 1;
      result.perms.push_back(std::move(perm));
    }
    if (!sys.satisfied_by(result.witness)) throw std::logic_error("permutation search: witness failed substitution");
  }
  return result;
}

}  // namespace

PermSearchResult permutation_point_search(const ConstraintSystem& sys, const PermSearchOptions& options) {
  std::vector<BlockPlan> blocks;
  for (const auto& b : sys.blocks()) {
    if (b.stochastic == Stochastic::None) {
      if (b.size() == 0) continue;
      throw std::invalid_argument("permutation search: block '" + b.name + "' is not stochastic");
    }
    if (b.rows > 64) throw CapExceeded("permutation search: block larger than 64");
    blocks.push_back({&b, true, b.rows});
  }

  // Scale each kept row to integer coefficients; the rhs rides along as a trailing entry.
  using ScaledRow = std::pair<std::vector<std::pair<std::size_t, Rational>>, const LinearRow*>;
  std::vector<ScaledRow> kept;
  bool fits_int64 = true;
  std::vector<std::vector<bool>> row_relevant(blocks.size()), col_relevant(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    row_relevant[b].assign(blocks[b].size, false);
    col_relevant[b].assign(blocks[b].size, false);
  }
  for (const auto& row : sys.rows()) {
    if (row.tag.rfind("stochastic:", 0) == 0) continue;
    mpz_class scale = row.rhs.get_den();
    for (const auto& t : row.terms) scale = lcm(scale, mpz_class(t.coeff.get_den()));
    ScaledRow sr{{}, &row};
    mpz_class magnitude = 0;
    for (const auto& t : row.terms) {
      Rational c = t.coeff * scale;
      magnitude += abs(c.get_num());
      sr.first.push_back({t.var, std::move(c)});
      const VarBlock& vb = sys.block_of(t.var);
      std::size_t b = 0;
      while (blocks[b].block != &vb) ++b;
      const std::size_t local = t.var - vb.offset;
      row_relevant[b][local / vb.cols] = true;
      col_relevant[b][local % vb.cols] = true;
    }
    Rational rhs = row.rhs * scale;
    magnitude += abs(rhs.get_num());
    if (magnitude > kSafeMagnitude) fits_int64 = false;
    sr.first.push_back({sys.num_vars(), std::move(rhs)});
    kept.push_back(std::move(sr));
  }

  std::vector<std::vector<std::size_t>> line_ids(blocks.size());
  std::vector<LinePlan> lines;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto nr = std::count(row_relevant[b].begin(), row_relevant[b].end(), true);
    const auto nc = std::count(col_relevant[b].begin(), col_relevant[b].end(), true);
    blocks[b].by_rows = nr <= nc;
    const auto& relevant = blocks[b].by_rows ? row_relevant[b] : col_relevant[b];
    line_ids[b].assign(blocks[b].size, 0);
    for (std::size_t l = 0; l < blocks[b].size; ++l) {
      if (!relevant[l]) continue;
      line_ids[b][l] = lines.size();
      lines.push_back({b, l});
    }
  }

  if (fits_int64) {
    const auto p = build_problem<std::int64_t>(sys, blocks, line_ids, kept, lines);
    return search(p, sys, options);
  }
  const auto p = build_problem<Rational>(sys, blocks, line_ids, kept, lines);
  return search(p, sys, options);
}

}  // namespace bvlab

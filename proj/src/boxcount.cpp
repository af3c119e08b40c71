#include "boxdim/boxcount.hpp"

#include <Eigen/Dense>

#include <cstdio>
#include <set>
#include <sstream>

#include "boxdim/errors.hpp"

namespace boxdim {

namespace {

void check_levels(int k, int l) {
  if (k < 1 || l < k) throw DomainError("approximate squares need 1 <= k <= l");
}

}  // namespace

ApproxSquareCount count_approx_squares_from(const Presentation& p, const VertexSet& root, int k, int l,
                                            const BoxcountOptions& options) {
  check_levels(k, l);
  const auto d = determinize_from(p, root, options.state_cap);

  // Words of length k grouped by the subset of vertices they can end in.
  std::vector<BigInt> cur(d.size(), 0), next(d.size(), 0);
  cur[d.root] = 1;
  for (int t = 0; t < k; ++t) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (std::size_t s = 0; s < d.size(); ++s) {
      if (cur[s] == 0) continue;
      for (const auto& [label, u] : d.transitions[s]) next[u] += cur[s];
    }
    std::swap(cur, next);
  }

  // Distinct column words of length l - k from each follower subset.
  std::vector<VertexSet> roots;
  std::vector<std::size_t> owners;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (cur[s] == 0) continue;
    roots.push_back(d.states[s]);
    owners.push_back(s);
  }
  const Presentation pp = project(p);
  std::vector<std::size_t> root_states;
  const auto dp = determinize_roots(pp, roots, &root_states, options.state_cap);
  const auto followers = follower_counts(dp, static_cast<std::size_t>(l - k));

  ApproxSquareCount out{k, l, 0};
  for (std::size_t i = 0; i < owners.size(); ++i) out.count += cur[owners[i]] * followers[root_states[i]];
  return out;
}

ApproxSquareCount count_approx_squares(const Presentation& p, int k, int l, const BoxcountOptions& options) {
  try {
    return count_approx_squares_from(p, VertexSet::all(p.vertex_count()), k, l, options);
  } catch (const BudgetExceeded&) {
    return count_approx_squares_bruteforce(p, k, l, options.enumeration_cap);
  }
}

BigInt grouped_count(const Alphabet& alphabet, LabelKind kind, const std::vector<Word>& words, int k) {
  std::set<std::pair<Word, Word>> squares;
  for (const Word& w : words) {
    if (w.size() < static_cast<std::size_t>(k)) throw DomainError("word shorter than k");
    Word head(w.begin(), w.begin() + k);
    Word tail(w.begin() + k, w.end());
    if (kind == LabelKind::digit) tail = project_word(alphabet, tail);
    squares.insert({std::move(head), std::move(tail)});
  }
  return BigInt(squares.size());
}

ApproxSquareCount count_approx_squares_bruteforce(const Presentation& p, int k, int l, std::size_t cap) {
  check_levels(k, l);
  const auto words = enumerate_words(p, static_cast<std::size_t>(l), cap);
  return {k, l, grouped_count(p.alphabet(), p.kind(), words, k)};
}

std::vector<ScalePair> anchored_scales(const Alphabet& alphabet, int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min) throw DomainError("scale range needs 1 <= k_min <= k_max");
  std::vector<ScalePair> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(anchored_scale(k, alphabet));
  return out;
}

DimensionEstimate dimension_estimate(const Presentation& p, const std::vector<ScalePair>& scales,
                                     const BoxcountOptions& options) {
  if (scales.empty()) throw DomainError("no scales given");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (!(scales[i].delta.neg_log() > scales[i - 1].delta.neg_log())) {
      throw DomainError("scales must be sorted by decreasing delta");
    }
  }
  DimensionEstimate est;
  for (const ScalePair& s : scales) {
    ScalePoint pt;
    pt.scale = s;
    pt.count = count_approx_squares(p, s.k, s.l, options).count;
    pt.log_count = log_big(pt.count);
    pt.ratio = static_cast<double>(pt.log_count / s.delta.neg_log());
    est.points.push_back(std::move(pt));
  }

  std::size_t from = est.points.size() / 2;
  if (est.points.size() - from < 2) from = 0;
  const auto rows = static_cast<Eigen::Index>(est.points.size() - from);
  if (rows < 2) {
    est.slope = est.points.back().ratio;
    return est;
  }
  Eigen::MatrixXd x(rows, 2);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const ScalePoint& pt = est.points[from + static_cast<std::size_t>(r)];
    x(r, 0) = 1.0;
    x(r, 1) = static_cast<double>(pt.scale.delta.neg_log());
    y(r) = static_cast<double>(pt.log_count);
  }
  est.slope = x.colPivHouseholderQr().solve(y)(1);
  return est;
}

std::string scale_table_csv(const DimensionEstimate& estimate) {
  std::ostringstream out;
  out << "k,l,delta,count_log,ratio_estimate\n";
  char buf[64];
  for (const ScalePoint& pt : estimate.points) {
    out << pt.scale.k << ',' << pt.scale.l << ',';
    std::snprintf(buf, sizeof buf, "%.12g", pt.scale.delta.value());
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12Lg", pt.log_count);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", pt.ratio);
    out << buf << '\n';
  }
  return out.str();
}

ApproxSquareCount coded_box_trend(const GeneratorFamily& fam, int k, int l, const BoxcountOptions& options) {
  check_levels(k, l);
  if (!fam.factor_automaton) {
    throw DomainError("family " + fam.name + " has no factor automaton; use the brute-force trend");
  }
  const FactorAutomaton fa = fam.factor_automaton(static_cast<std::size_t>(l));
  if (fa.exact_up_to && *fa.exact_up_to < static_cast<std::size_t>(l)) {
    throw DomainError("factor automaton is not exact to length " + std::to_string(l));
  }
  VertexSet root(fa.graph.vertex_count());
  for (std::size_t v : fa.roots) root.insert(v);
  return count_approx_squares_from(fa.graph, root, k, l, options);
}

ApproxSquareCount coded_box_trend_bruteforce(const GeneratorFamily& fam, int k, int l, std::size_t generator_cap,
                                             std::size_t cap) {
  check_levels(k, l);
  const auto words = enumerate_language(fam, static_cast<std::size_t>(l), generator_cap, cap);
  return {k, l, grouped_count(fam.alphabet, fam.kind, words, k)};
}

}  // namespace boxdim

#include "ecoepi/pattern.hpp"

#include <algorithm>

namespace ecoepi {

namespace {

double rel_l2(const Eigen::ArrayXXd& a, const Eigen::ArrayXXd& b) {
  const double ref = std::max(std::sqrt(a.square().sum()), 1e-30);
  return std::sqrt((a - b).square().sum()) / ref;
}

}  // namespace

FieldDistances snapshot_distance(const FieldGrid& a, const FieldGrid& b) {
  if (a.u.rows() != b.u.rows() || a.u.cols() != b.u.cols())
    throw validation_error("snapshot_distance: grid dimensions differ");
  FieldDistances d;
  d.t_a = a.time;
  d.t_b = b.time;
  d.u = rel_l2(a.u, b.u);
  d.v = rel_l2(a.v, b.v);
  d.w = rel_l2(a.w, b.w);
  return d;
}

std::string to_string(PatternLabel label) {
  switch (label) {
    case PatternLabel::turing: return "turing";
    case PatternLabel::stationary_non_turing: return "stationary_non_turing";
    case PatternLabel::non_stationary_non_turing: return "non_stationary_non_turing";
    case PatternLabel::homogeneous: return "homogeneous";
  }
  return "?";
}

PatternReport classify(const std::vector<FieldGrid>& history, Verdict linear_verdict) {
  if (history.size() < 2) throw validation_error("classify: needs at least two snapshots");
  const FieldGrid& last = history.back();
  const FieldGrid& prev = history[history.size() - 2];
  if (!(last.time - prev.time >= 100.0))
    throw validation_error("classify: final snapshots must be >= 100 time units apart");

  PatternReport rep;
  rep.linear_verdict = linear_verdict;
  for (size_t i = 0; i + 1 < history.size(); ++i)
    rep.distances.push_back(snapshot_distance(history[i], history[i + 1]));
  for (const FieldGrid& f : history)
    rep.amplitudes.emplace_back(f.u.maxCoeff() - f.u.minCoeff(),
                                f.v.maxCoeff() - f.v.minCoeff(),
                                f.w.maxCoeff() - f.w.minCoeff());
  rep.stationary = rep.distances.back().max() < 1e-2;
  if (rep.amplitudes.back().maxCoeff() < 1e-6)
    rep.label = PatternLabel::homogeneous;
  else if (rep.stationary)
    rep.label = linear_verdict == Verdict::turing ? PatternLabel::turing
                                                  : PatternLabel::stationary_non_turing;
  else
    rep.label = PatternLabel::non_stationary_non_turing;
  return rep;
}

}  // namespace ecoepi

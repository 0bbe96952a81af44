#include "pscub/scub.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <random>

namespace pscub {

std::string LeopKind::name() const {
  switch (tag) {
    case Tag::KP: return "kp";
    case Tag::Dobrushin: return "dob";
    case Tag::FP: return "fp";
    case Tag::Reduced: return "red";
    case Tag::Returning: return "ret";
    case Tag::Mixing: return "mixing";
    case Tag::MixingBest: return "mix";
    case Tag::Synthetic: return "syn";
  }
  return "?";
}

bool LeopKind::new_shape() const {
  return tag != Tag::KP && tag != Tag::Dobrushin && tag != Tag::FP;
}

LeopKind parse_leop_kind(const std::string& s) {
  if (s == "kp") return LeopKind::kp();
  if (s == "dob") return LeopKind::dobrushin();
  if (s == "fp") return LeopKind::fp();
  if (s == "red") return LeopKind::reduced();
  if (s == "ret") return LeopKind::returning();
  if (s == "mix") return LeopKind::mixing_best();
  throw Error(Errc::ParseError, "unknown SCUB kind '" + s + "'");
}

namespace {

double xi(const PolymerSystem& sys, const Volume& v, const FugacityVector& mu) {
  return v.empty() ? 1.0 : partition_function(sys, v, mu);
}

void check_vector(const PolymerSystem& sys, const FugacityVector& v, const char* what) {
  if (static_cast<int>(v.size()) != sys.size())
    throw Error(Errc::PreconditionViolated, std::string(what) + " has wrong length");
}

double leop_fp(const PolymerSystem& sys, int g, const FugacityVector& mu) {
  return xi(sys, sys.incompatible_set(g), mu);
}

double leop_ret(const PolymerSystem& sys, int g, const FugacityVector& mu) {
  const auto& nb = sys.neighbours(g);
  if (nb.empty()) return 1.0 + mu[g];
  double best = 0.0;
  for (int e : nb) best = std::max(best, xi(sys, volume_without(nb, e), mu));
  return (1.0 + mu[g]) * best;
}

double leop_syn(const LeopKind& kind, const PolymerSystem& sys, int g, const FugacityVector& mu) {
  const auto& nb = sys.neighbours(g);
  if (nb.empty()) return 1.0 + mu[g];
  Volume out, in;
  for (int e : nb) {
    if (kind.syn.at(g, e) == Behaviour::R) out.push_back(e);
    if (kind.syn.at(e, g) == Behaviour::R) in.push_back(e);
  }
  double a = 0.0, b = 0.0;
  if (out.size() != nb.size())
    a = xi(sys, out, mu) * xi(sys, volume_minus(sys.incompatible_set(g), out), mu);
  if (!out.empty()) {
    double best = 0.0;
    for (int e : kind.incoming_sup ? in : nb)
      best = std::max(best, xi(sys, volume_without(out, e), mu) *
                                xi(sys, volume_minus(volume_without(nb, e), out), mu));
    b = (1.0 + mu[g]) * best;
  }
  return std::max(a, b);
}

}  // namespace

double leop(const LeopKind& kind, const PolymerSystem& sys, int g, const FugacityVector& mu) {
  if (g < 0 || g >= sys.size()) throw Error(Errc::UnknownPolymer, std::to_string(g));
  check_vector(sys, mu, "mu");
  using T = LeopKind::Tag;
  switch (kind.tag) {
    case T::KP: {
      double s = 0.0;
      for (int x : sys.incompatible_set(g)) s += mu[x];
      return std::exp(s);
    }
    case T::Dobrushin: {
      double p = 1.0;
      for (int x : sys.incompatible_set(g)) p *= 1.0 + mu[x];
      return p;
    }
    case T::FP: return leop_fp(sys, g, mu);
    case T::Reduced: {
      const auto& nb = sys.neighbours(g);
      double best = nb.empty() ? 1.0 : 0.0;
      for (int e : nb) {
        double p = 1.0;
        for (int x : nb)
          if (x != e) p *= 1.0 + mu[x];
        best = std::max(best, p);
      }
      return (1.0 + mu[g]) * best;
    }
    case T::Returning: return leop_ret(sys, g, mu);
    case T::Mixing:
      if (static_cast<int>(kind.mix.size()) != sys.size())
        throw Error(Errc::PreconditionViolated, "mixing behaviour has wrong length");
      return kind.mix[g] == Behaviour::G ? leop_fp(sys, g, mu) : leop_ret(sys, g, mu);
    case T::MixingBest: return std::min(leop_fp(sys, g, mu), leop_ret(sys, g, mu));
    case T::Synthetic:
      if (kind.syn.size() != sys.size())
        throw Error(Errc::PreconditionViolated, "synthetic behaviour has wrong size");
      return leop_syn(kind, sys, g, mu);
  }
  throw Error(Errc::WrongKind, "unhandled SCUB kind");
}

FugacityVector leop_all(const LeopKind& kind, const PolymerSystem& sys, const FugacityVector& mu) {
  FugacityVector out(sys.size());
  for (int g = 0; g < sys.size(); ++g) out[g] = leop(kind, sys, g, mu);
  return out;
}

FixpointReport iterate_fixpoint(const VectorOperator& T, const FugacityVector& start,
                                bool increasing, const FixpointOptions& opt) {
  FixpointReport rep;
  FugacityVector mu = start;
  for (int it = 1; it <= opt.max_iter; ++it) {
    FugacityVector next = T(mu);
    rep.iterations = it;
    double change = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (!std::isfinite(next[i]) || next[i] > opt.divergence) {
        rep.limit = next;
        return rep;
      }
      const double slack = 1e-14 * std::max(std::abs(mu[i]), std::abs(next[i]));
      if (increasing ? next[i] < mu[i] - slack : next[i] > mu[i] + slack) rep.monotone = false;
      const double scale = std::max(std::abs(next[i]), std::numeric_limits<double>::min());
      change = std::max(change, std::abs(next[i] - mu[i]) / scale);
    }
    mu = std::move(next);
    if (change <= opt.rel_tol) {
      rep.converged = true;
      break;
    }
  }
  rep.limit = mu;
  return rep;
}

namespace {

// Fills the inequality flags once the iteration has settled.
void finish_report(FixpointReport& rep, const VectorOperator& T, bool strict_required,
                   const FixpointOptions& opt) {
  rep.strict_required = strict_required;
  if (!rep.converged) return;
  rep.witness_mu = rep.limit;
  const FugacityVector& mu = rep.limit;
  FugacityVector t = T(mu);
  rep.nonstrict = true;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (t[i] > mu[i] * (1.0 + 1e-9)) rep.nonstrict = false;
  FugacityVector bumped(mu);
  for (double& x : bumped) x = x * (1.0 + opt.delta) + opt.delta;
  FugacityVector tb = T(bumped);
  rep.strict = true;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!(tb[i] < bumped[i])) rep.strict = false;
}

VectorOperator system_operator(const LeopKind& kind, const PolymerSystem& sys,
                               const FugacityVector& rho) {
  return [&kind, &sys, &rho](const FugacityVector& mu) {
    FugacityVector out = leop_all(kind, sys, mu);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= rho[i];
    return out;
  };
}

void check_rho(const PolymerSystem& sys, const FugacityVector& rho) {
  check_vector(sys, rho, "rho");
  for (double r : rho)
    if (!(r >= 0.0)) throw Error(Errc::PreconditionViolated, "rho must be nonnegative");
}

}  // namespace

FixpointReport scub_holds(const LeopKind& kind, const PolymerSystem& sys, const FugacityVector& rho,
                          const FixpointOptions& opt) {
  check_rho(sys, rho);
  auto T = system_operator(kind, sys, rho);
  FixpointReport rep = iterate_fixpoint(T, FugacityVector(sys.size(), 0.0), true, opt);
  finish_report(rep, T, kind.new_shape(), opt);
  return rep;
}

FixpointReport scub_iterate_from(const LeopKind& kind, const PolymerSystem& sys,
                                 const FugacityVector& rho, const FugacityVector& start,
                                 const FixpointOptions& opt) {
  check_rho(sys, rho);
  check_vector(sys, start, "start");
  auto T = system_operator(kind, sys, rho);
  FixpointReport rep = iterate_fixpoint(T, start, false, opt);
  finish_report(rep, T, kind.new_shape(), opt);
  return rep;
}

HomogeneousShape tree_shape(int D) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= D; ++i) edges.emplace_back(0, i);
  return {"tree" + std::to_string(D), PolymerSystem::from_edges(D + 1, edges), 0};
}

HomogeneousShape hex_shape() {
  HomogeneousShape s = tree_shape(3);
  s.name = "hex";
  return s;
}

HomogeneousShape hex_line_shape() {
  // centre 0; 1,2 share one endpoint of the hex edge, 3,4 the other
  auto sys = PolymerSystem::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}});
  return {"line", std::move(sys), 0};
}

double homogeneous_leop(const LeopKind& kind, const HomogeneousShape& shape, double mu) {
  return leop(kind, shape.local, shape.center, FugacityVector(shape.local.size(), mu));
}

FixpointReport scub_holds(const LeopKind& kind, const HomogeneousShape& shape, double rho,
                          const FixpointOptions& opt) {
  if (!(rho >= 0.0)) throw Error(Errc::PreconditionViolated, "rho must be nonnegative");
  VectorOperator T = [&](const FugacityVector& mu) {
    return FugacityVector{rho * homogeneous_leop(kind, shape, mu[0])};
  };
  FixpointReport rep = iterate_fixpoint(T, {0.0}, true, opt);
  finish_report(rep, T, kind.new_shape(), opt);
  return rep;
}

namespace {

// Maximises r(μ) over μ ∈ [0,∞) with μ = x/(1−x). Brent first, then a grid
// over x to catch a missed mode.
OptimalRho maximise_ratio(const std::function<double(double)>& r) {
  constexpr double kTop = 1.0 - 1e-9;
  auto mu_of = [](double x) { return x / (1.0 - x); };
  auto neg = [&](double x) {
    double v = r(mu_of(x));
    return std::isfinite(v) ? -v : 0.0;
  };
  const int bits = std::numeric_limits<double>::digits / 2;
  auto [xb, fb] = boost::math::tools::brent_find_minima(neg, 0.0, kTop, bits);

  OptimalRho out;
  constexpr int kGrid = 10000;
  double best_x = xb, best_f = fb;
  for (int i = 0; i < kGrid; ++i) {
    double x = i * (1.0 / kGrid);
    double f = neg(x);
    if (f < best_f - 1e-12 * (1.0 + std::abs(best_f))) best_f = f, best_x = x;
  }
  if (best_x != xb) {
    out.grid_fallback = true;
    double lo = std::max(0.0, best_x - 1.0 / kGrid), hi = std::min(kTop, best_x + 1.0 / kGrid);
    auto [xr, fr] = boost::math::tools::brent_find_minima(neg, lo, hi, bits);
    if (fr < best_f) best_x = xr, best_f = fr;
  }
  out.rho = -best_f;
  out.mu = best_x > 1.0 - 1e-6 ? std::numeric_limits<double>::infinity() : mu_of(best_x);
  return out;
}

}  // namespace

OptimalRho optimal_rho(const LeopKind& kind, const HomogeneousShape& shape) {
  return maximise_ratio([&](double mu) { return mu / homogeneous_leop(kind, shape, mu); });
}

OptimalRho optimal_rho(const LeopKind& kind, const PolymerSystem& sys, bool homogeneous) {
  if (homogeneous) {
    return maximise_ratio([&](double mu) {
      FugacityVector v(sys.size(), mu);
      double r = std::numeric_limits<double>::infinity();
      for (int g = 0; g < sys.size(); ++g) r = std::min(r, mu / leop(kind, sys, g, v));
      return r;
    });
  }
  // Every Leop is at least 1+μ_γ, so t ≥ 1 never holds. The upper end is off
  // the dyadic grid: at a tangent fixpoint (e.g. ρ(1+μ)² = μ at 1/4) the
  // iteration stalls even though larger ρ may pass.
  double lo = 0.0, hi = 1.001;
  FugacityVector witness(sys.size(), 0.0);
  for (int i = 0; i < 50; ++i) {
    double mid = 0.5 * (lo + hi);
    auto rep = scub_holds(kind, sys, FugacityVector(sys.size(), mid));
    if (rep.holds()) {
      lo = mid;
      witness = rep.limit;
    } else {
      hi = mid;
    }
  }
  OptimalRho out;
  out.rho = lo;
  out.mu = witness.empty() ? 0.0 : *std::max_element(witness.begin(), witness.end());
  return out;
}

PairVector::PairVector(const PolymerSystem& sys, double fill)
    : n_(sys.size()), v_(static_cast<std::size_t>(n_) * n_, 0.0), ok_(v_.size(), 0) {
  for (int g = 0; g < n_; ++g)
    for (int e : sys.neighbours(g)) {
      ok_[g * n_ + e] = 1;
      v_[g * n_ + e] = fill;
    }
}

PairVector PairVector::from_map(const PolymerSystem& sys,
                                const std::map<std::pair<int, int>, double>& values) {
  PairVector u(sys);
  for (const auto& [k, v] : values) {
    if (!u.valid(k.first, k.second))
      throw Error(Errc::UnknownPair,
                  "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")");
    u.set(k.first, k.second, v);
  }
  return u;
}

PairVector PairVector::multiplex(const PolymerSystem& sys, const FugacityVector& mu) {
  check_vector(sys, mu, "mu");
  PairVector u(sys);
  for (int g = 0; g < u.n_; ++g)
    for (int e : sys.neighbours(g)) u.set(g, e, mu[g]);
  return u;
}

double PairVector::at(int g, int e) const {
  if (!valid(g, e))
    throw Error(Errc::UnknownPair, "(" + std::to_string(g) + "," + std::to_string(e) + ")");
  return v_[g * n_ + e];
}

void PairVector::set(int g, int e, double v) {
  if (!valid(g, e))
    throw Error(Errc::UnknownPair, "(" + std::to_string(g) + "," + std::to_string(e) + ")");
  v_[g * n_ + e] = v;
}

std::vector<std::pair<int, int>> PairVector::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int g = 0; g < n_; ++g)
    for (int e = 0; e < n_; ++e)
      if (ok_[g * n_ + e]) out.emplace_back(g, e);
  return out;
}

FugacityVector PairVector::sup_over_escapes() const {
  FugacityVector out(n_, 0.0);
  for (auto [g, e] : pairs()) out[g] = std::max(out[g], v_[g * n_ + e]);
  return out;
}

PairVector multiplexed_operator(const LeopKind& kind, const PolymerSystem& sys,
                                const FugacityVector& rho, const PairVector& u) {
  using T = LeopKind::Tag;
  if (kind.tag != T::Returning && kind.tag != T::Reduced && kind.tag != T::Synthetic)
    throw Error(Errc::WrongKind, "multiplexing needs red, ret or syn");
  if (u.size() != sys.size()) throw Error(Errc::UnknownPair, "pair vector of another system");
  check_rho(sys, rho);
  PairVector out(sys);
  FugacityVector w(sys.size(), 0.0);
  for (int g = 0; g < sys.size(); ++g) {
    const auto& nb = sys.neighbours(g);
    for (int x : nb) w[x] = u.at(x, g);
    Volume out_r;
    if (kind.tag == T::Synthetic)
      for (int e : nb)
        if (kind.syn.at(g, e) == Behaviour::R) out_r.push_back(e);
    for (int e : nb) {
      const double own = u.at(g, e);
      double v = 0.0;
      if (kind.tag == T::Returning) {
        v = (1.0 + own) * xi(sys, volume_without(nb, e), w);
      } else if (kind.tag == T::Reduced) {
        v = 1.0 + own;
        for (int x : nb)
          if (x != e) v *= 1.0 + w[x];
      } else {
        double a = 0.0, b = 0.0;
        if (out_r.size() != nb.size()) {
          w[g] = own;
          a = xi(sys, out_r, w) * xi(sys, volume_minus(sys.incompatible_set(g), out_r), w);
          w[g] = 0.0;
        }
        if (!out_r.empty())
          b = (1.0 + own) * xi(sys, volume_without(out_r, e), w) *
              xi(sys, volume_minus(volume_without(nb, e), out_r), w);
        v = std::max(a, b);
      }
      out.set(g, e, rho[g] * v);
    }
    for (int x : nb) w[x] = 0.0;
  }
  return out;
}

EscapingSeriesReport escaping_series_bound_check(const PolymerSystem& sys,
                                                 const FugacityVector& rho,
                                                 const FugacityVector& mu, int n_max,
                                                 const LeopKind& kind) {
  check_rho(sys, rho);
  check_vector(sys, mu, "mu");
  FugacityVector t = leop_all(kind, sys, mu);
  for (int g = 0; g < sys.size(); ++g)
    if (rho[g] * t[g] > mu[g] * (1.0 + 1e-9))
      throw Error(Errc::PreconditionViolated, "mu is not a witness for rho");
  EscapingSeriesReport rep;
  for (int g = 0; g < sys.size(); ++g)
    for (int e : sys.neighbours(g)) {
      auto sums = pinned_series_partial_sums(sys, g, rho, n_max, e);
      for (double s : sums) {
        const double v = rho[g] * s;
        ++rep.checks;
        if (mu[g] > 0.0) rep.max_ratio = std::max(rep.max_ratio, v / mu[g]);
        if (v > mu[g] * (1.0 + 1e-12)) {
          ++rep.violations;
          rep.ok = false;
        }
      }
    }
  return rep;
}

FugacityVector generic_scub_bound(const PolymerSystem& sys, const FugacityVector& rho,
                                  const FugacityVector& nu) {
  check_rho(sys, rho);
  check_vector(sys, nu, "nu");
  for (int g = 0; g < sys.size(); ++g)
    if (!(rho[g] <= nu[g])) throw Error(Errc::PreconditionViolated, "rho must not exceed nu");
  if (!admissible(sys, nu)) throw Error(Errc::PreconditionViolated, "nu is not admissible");
  FugacityVector out(sys.size());
  for (int g = 0; g < sys.size(); ++g) out[g] = nu[g] == 0.0 ? 1.0 : (nu[g] - rho[g]) / nu[g];
  return out;
}

double submultiplicativity_gap(const PolymerSystem& sys, const Volume& a, const Volume& b,
                               const FugacityVector& mu) {
  if (!volume_intersect(a, b).empty())
    throw Error(Errc::PreconditionViolated, "volumes must be disjoint");
  return xi(sys, a, mu) * xi(sys, b, mu) - xi(sys, volume_union(a, b), mu);
}

bool submultiplicativity_strict(const PolymerSystem& sys, const Volume& a, const Volume& b,
                                const FugacityVector& mu) {
  for (int x : a)
    for (int y : b)
      if (mu[x] > 0.0 && mu[y] > 0.0 && sys.incompatible(x, y)) return true;
  return false;
}

namespace {

PairBehaviour lift(const PolymerSystem& sys, const std::vector<Behaviour>& h) {
  PairBehaviour g(sys.size(), Behaviour::G);
  for (int a = 0; a < sys.size(); ++a)
    for (int e : sys.neighbours(a)) g.set(a, e, h[a]);
  return g;
}

std::vector<Behaviour> project(const PolymerSystem& sys, const PairBehaviour& g) {
  std::vector<Behaviour> h(sys.size(), Behaviour::G);
  for (int a = 0; a < sys.size(); ++a) {
    const auto& nb = sys.neighbours(a);
    bool all_r = !nb.empty();
    for (int e : nb)
      if (g.at(a, e) != Behaviour::R) all_r = false;
    if (all_r) h[a] = Behaviour::R;
  }
  return h;
}

bool below(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
}

}  // namespace

MixingReport mixing_reduction_check(const PolymerSystem& sys, const FugacityVector& mu,
                                    int samples, unsigned seed, double tol) {
  const int n = sys.size();
  if (n > 20) throw Error(Errc::TooLarge, "mixing check limited to 20 polymers");
  check_vector(sys, mu, "mu");
  MixingReport rep;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    if (rep.failures.size() < 16) rep.failures.push_back(why);
  };

  const FugacityVector fp = leop_all(LeopKind::fp(), sys, mu);
  const FugacityVector ret = leop_all(LeopKind::returning(), sys, mu);
  if (leop_all(LeopKind::mixing(std::vector<Behaviour>(n, Behaviour::G)), sys, mu) != fp)
    fail(rep.extremes, "Mix(all G) != FP");
  if (leop_all(LeopKind::mixing(std::vector<Behaviour>(n, Behaviour::R)), sys, mu) != ret)
    fail(rep.extremes, "Mix(all R) != Ret");

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);

  // polymer behaviours h: Syn(i(h)) = Mix(h)
  const bool all_h = n <= 10;
  const int nh = all_h ? (1 << n) : samples;
  for (int k = 0; k < nh; ++k) {
    std::vector<Behaviour> h(n);
    for (int a = 0; a < n; ++a)
      h[a] = (all_h ? (k >> a & 1) : coin(rng)) ? Behaviour::R : Behaviour::G;
    if (leop_all(LeopKind::synthetic(lift(sys, h)), sys, mu) != leop_all(LeopKind::mixing(h), sys, mu))
      fail(rep.extremes, "Syn(i(h)) != Mix(h)");
  }

  // pair behaviours g
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int e : sys.neighbours(a)) pairs.emplace_back(a, e);
  const bool all_g = pairs.size() <= 12;
  const long ng = all_g ? (1L << pairs.size()) : samples;
  for (long k = 0; k < ng; ++k) {
    PairBehaviour g(n, Behaviour::G);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (all_g ? (k >> i & 1) : coin(rng)) g.set(pairs[i].first, pairs[i].second, Behaviour::R);
    ++rep.behaviours;
    const FugacityVector syn = leop_all(LeopKind::synthetic(g), sys, mu);

    for (int a = 0; a < n; ++a) {
      const auto& nb = sys.neighbours(a);
      bool all_r = !nb.empty();
      for (int e : nb)
        if (g.at(a, e) != Behaviour::R) all_r = false;
      if (nb.empty() || all_r) continue;
      PairBehaviour g2 = g;
      for (int e : nb) g2.set(a, e, Behaviour::G);
      const FugacityVector syn2 = leop_all(LeopKind::synthetic(g2), sys, mu);
      for (int x = 0; x < n; ++x)
        if (!below(syn2[x], syn[x], tol))
          fail(rep.improvement, "turning polymer " + std::to_string(a) + " greedy increased " +
                                    std::to_string(x));
    }

    const FugacityVector mix = leop_all(LeopKind::mixing(project(sys, g)), sys, mu);
    for (int x = 0; x < n; ++x)
      if (!below(mix[x], syn[x], tol)) fail(rep.reduction, "Syn(g) < Mix(u(g))");
  }

  // neighbourhood splits Λ1 ⊆ Γ*≠(γ), Λ2 = Γ*(γ) \ Λ1
  for (int a = 0; a < n; ++a) {
    const auto& nb = sys.neighbours(a);
    if (nb.size() > 16) continue;
    const Volume full = sys.incompatible_set(a);
    for (unsigned s = 0; s < (1u << nb.size()); ++s) {
      Volume l1;
      for (std::size_t i = 0; i < nb.size(); ++i)
        if (s >> i & 1) l1.push_back(nb[i]);
      Volume l2 = volume_minus(full, l1);
      ++rep.splits;
      const double gap = submultiplicativity_gap(sys, l1, l2, mu);
      const double scale = std::max(1.0, xi(sys, full, mu));
      if (gap < -tol * scale) fail(rep.submultiplicative, "negative gap");
      const bool strict_seen = gap > tol * scale;
      if (strict_seen != submultiplicativity_strict(sys, l1, l2, mu))
        fail(rep.equality_condition, "equality condition mismatch");
    }
  }
  return rep;
}

FugacityVector synthetic_min_leop(const PolymerSystem& sys, const FugacityVector& mu) {
  check_vector(sys, mu, "mu");
  FugacityVector out(sys.size());
  for (int a = 0; a < sys.size(); ++a) {
    const auto& nb = sys.neighbours(a);
    if (nb.size() > 20) throw Error(Errc::TooLarge, "neighbourhood too large to enumerate");
    double best = std::numeric_limits<double>::infinity();
    PairBehaviour g(sys.size(), Behaviour::G);
    LeopKind kind = LeopKind::synthetic(g);
    for (unsigned s = 0; s < (1u << nb.size()); ++s) {
      for (std::size_t i = 0; i < nb.size(); ++i)
        kind.syn.set(a, nb[i], (s >> i & 1) ? Behaviour::R : Behaviour::G);
      best = std::min(best, leop(kind, sys, a, mu));
    }
    out[a] = best;
  }
  return out;
}

FugacityVector mixing_min_leop(const PolymerSystem& sys, const FugacityVector& mu) {
  check_vector(sys, mu, "mu");
  const int n = sys.size();
  FugacityVector out(n);
  for (int a = 0; a < n; ++a) {
    std::vector<Behaviour> h(n, Behaviour::G);
    double g = leop(LeopKind::mixing(h), sys, a, mu);
    h[a] = Behaviour::R;
    out[a] = std::min(g, leop(LeopKind::mixing(h), sys, a, mu));
  }
  return out;
}

double homogeneous_tree_rho_star(int D) {
  if (D < 2) throw Error(Errc::OutOfRange, "degree must be at least 2");
  return std::pow(D - 1.0, D - 1.0) / std::pow(static_cast<double>(D), D);
}

TreeSolution homogeneous_tree(int D, double rho) {
  TreeSolution out;
  out.rho_star = homogeneous_tree_rho_star(D);
  if (!(rho >= 0.0)) throw Error(Errc::OutOfRange, "rho must be nonnegative");
  if (rho > out.rho_star * (1.0 + 1e-12))
    throw Error(Errc::OutOfRange, "rho above the tree threshold");
  const double a_star = (D - 1.0) / D;
  if (rho == 0.0) return out;
  if (rho >= out.rho_star) {
    out.alpha = a_star;
    return out;
  }
  // Iteration from 1 decreases towards the stable root; it is only sublinear
  // near ρ*, so its value serves as the upper end of a bracket.
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) hi = 1.0 - rho / std::pow(hi, D - 1);
  hi = std::max(hi, a_star);
  auto f = [&](double a) { return std::pow(a, D) - std::pow(a, D - 1) + rho; };
  double fhi = f(hi);
  if (fhi <= 0.0) {
    // still above the root after rounding; fall back to α = 1
    hi = 1.0;
    fhi = f(hi);
  }
  const double flo = f(a_star);
  if (flo >= 0.0) {
    out.alpha = a_star;
    return out;
  }
  std::uintmax_t iters = 200;
  auto [lo_r, hi_r] = boost::math::tools::toms748_solve(
      f, a_star, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  out.alpha = 0.5 * (lo_r + hi_r);
  return out;
}

double homogeneous_tree_derivative(int D, double rho) {
  const double a = homogeneous_tree(D, rho).alpha;
  const double denom = std::pow(a, D - 2) * (D * a - (D - 1.0));
  return denom <= 0.0 ? -std::numeric_limits<double>::infinity() : -1.0 / denom;
}

}  // namespace pscub

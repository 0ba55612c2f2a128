#include "abelframe/potential_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "abelframe/linalg.hpp"
#include "abelframe/modrep.hpp"

namespace abelframe {

void validate_norms(std::span<const double> norms) {
  if (norms.empty()) throw InputError("at least one norm is required");
  for (std::size_t m = 0; m < norms.size(); ++m) {
    if (!(norms[m] > 0.0) || !std::isfinite(norms[m])) throw InputError("norms must be positive");
    if (m > 0 && norms[m] > norms[m - 1]) throw InputError("norms must be nonincreasing");
  }
}

std::optional<std::size_t> compute_m0(std::span<const double> norms, std::size_t N) {
  validate_norms(norms);
  if (N == 0) throw InputError("subgroup index must be >= 1");
  const std::size_t n = norms.size();
  for (std::size_t m = 0; m < std::min(N, n); ++m) {
    double tail = 0.0;
    for (std::size_t j = m; j < n; ++j) tail += norms[j] * norms[j];
    const double lhs = static_cast<double>(N - m) * norms[m] * norms[m];
    if (lhs <= tail * (1.0 + 1e-12)) return m;
  }
  return std::nullopt;
}

bool fundamental_frame_inequality(std::span<const double> norms, std::size_t d) {
  const auto m0 = compute_m0(norms, d);
  return m0.has_value() && *m0 == 0;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::tight: return "tight";
    case Regime::split: return "split";
    default: return "underdetermined";
  }
}

SplitIndex split_index(std::span<const double> norms, std::size_t N) {
  const auto m0 = compute_m0(norms, N);
  if (!m0) return {Regime::underdetermined, norms.size()};
  return {*m0 == 0 ? Regime::tight : Regime::split, *m0};
}

double fp_floor(std::span<const double> norms, std::size_t subgroup_order, std::size_t N,
                std::size_t m0) {
  const std::size_t n = norms.size();
  if (m0 > n) throw InputError("m0 exceeds the number of filters");
  double orth = 0.0;
  for (std::size_t m = 0; m < m0; ++m) orth += std::pow(norms[m], 4);
  double tight = 0.0;
  if (m0 < n) {
    if (m0 >= N) throw InputError("m0 must be smaller than the subgroup index");
    double tail = 0.0;
    for (std::size_t m = m0; m < n; ++m) tail += norms[m] * norms[m];
    tight = tail * tail / static_cast<double>(N - m0);
  }
  return static_cast<double>(subgroup_order) * (orth + tight);
}

std::vector<Signal> fp_gradient(const FilterBank& fb) {
  const double scale = 4.0 * static_cast<double>(fb.subgroup().order());
  std::vector<Signal> out;
  out.reserve(fb.size());
  for (const auto& f : fb.filters()) out.push_back(scale * frame_operator_apply(fb, f));
  return out;
}

std::vector<Signal> riemannian_gradient(const FilterBank& fb) {
  auto g = fp_gradient(fb);
  for (std::size_t m = 0; m < fb.size(); ++m) {
    const auto& f = fb.filter(m);
    const double nsq = f.norm_squared();
    if (nsq == 0.0) continue;
    const double radial = inner(g[m], f).real() / nsq;
    g[m] -= Complex(radial) * f;
  }
  return g;
}

double stacked_norm(std::span<const Signal> v) {
  double s = 0.0;
  for (const auto& x : v) s += x.norm_squared();
  return std::sqrt(s);
}

double PartitionReport::max_defect() const {
  return std::max({orthogonality_defect, cross_orthogonality_defect, tightness_defect,
                   block_norm_defect, block_tightness_defect, eigenvector_defect});
}

PartitionReport verify_theorem(const FilterBank& fb, std::size_t m0, double tol) {
  const std::size_t n = fb.size();
  const std::size_t H = fb.subgroup().order();
  const std::size_t N = fb.subgroup().index();
  if (m0 > n) throw InputError("m0 exceeds the number of filters");
  if (m0 >= N) throw InputError("m0 must be smaller than the subgroup index");

  PartitionReport rep;
  rep.m0 = m0;
  rep.expected_rank = H * (N - m0);

  const auto X = expand_system(fb);
  const std::size_t first = m0 * H;
  for (std::size_t p = 0; p < first; ++p) {
    for (std::size_t q = p + 1; q < X.size(); ++q) {
      const double v = std::abs(inner(X[p], X[q]));
      if (q < first) {
        rep.orthogonality_defect = std::max(rep.orthogonality_defect, v);
      } else {
        rep.cross_orthogonality_defect = std::max(rep.cross_orthogonality_defect, v);
      }
    }
  }

  const std::span<const Signal> second(X.begin() + static_cast<std::ptrdiff_t>(first), X.end());
  const auto norms = fb.norms();
  double tail = 0.0;
  for (std::size_t m = m0; m < n; ++m) tail += norms[m] * norms[m];
  const double lambda_tight = tail / static_cast<double>(N - m0);

  if (!second.empty()) {
    const auto ev = frame_operator_eigenvalues(second);
    const double rank_tol = std::max(tol, 1e-9);
    rep.tight_rank = psd_rank(ev, rank_tol);
    const double top = ev.back();
    const double low = ev[ev.size() - std::max<std::size_t>(rep.tight_rank, 1)];
    rep.tightness_defect = top > 0.0 ? (top - low) / top : 0.0;
  }

  const auto blocks = build_modrep(fb);
  for (const auto& B : blocks.blocks) {
    double tail_block = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double c = B.col(static_cast<Eigen::Index>(m)).norm();
      if (m < m0) {
        rep.block_norm_defect = std::max(rep.block_norm_defect, std::abs(c - norms[m]));
      } else {
        tail_block += c * c;
      }
    }
    rep.block_norm_defect = std::max(rep.block_norm_defect, std::abs(tail_block - tail));

    if (m0 < n && lambda_tight > 0.0) {
      const Eigen::MatrixXcd Bt = B.rightCols(static_cast<Eigen::Index>(n - m0));
      const auto ev = hermitian_eigenvalues(Bt * Bt.adjoint());
      for (std::size_t i = 0; i < ev.size(); ++i) {
        const double target = i < m0 ? 0.0 : lambda_tight;
        rep.block_tightness_defect =
            std::max(rep.block_tightness_defect, std::abs(ev[i] - target) / lambda_tight);
      }
    }
  }

  for (std::size_t m = 0; m < n; ++m) {
    if (norms[m] == 0.0) continue;
    const double lambda = m < m0 ? norms[m] * norms[m] : lambda_tight;
    const Signal r = frame_operator_apply(fb, fb.filter(m)) - Complex(lambda) * fb.filter(m);
    rep.eigenvector_defect = std::max(rep.eigenvector_defect, r.norm() / norms[m]);
  }
  return rep;
}

UnderdeterminedReport verify_underdetermined(const FilterBank& fb, double /*tol*/) {
  if (fb.size() > fb.subgroup().index()) {
    throw InputError("underdetermined verification needs n <= [G:H]");
  }
  UnderdeterminedReport rep;
  const auto X = expand_system(fb);
  for (std::size_t p = 0; p < X.size(); ++p) {
    for (std::size_t q = p + 1; q < X.size(); ++q) {
      rep.orthogonality_defect = std::max(rep.orthogonality_defect, std::abs(inner(X[p], X[q])));
    }
  }
  const auto norms = fb.norms();
  for (std::size_t m = 0; m < fb.size(); ++m) {
    if (norms[m] == 0.0) continue;
    const Signal r =
        frame_operator_apply(fb, fb.filter(m)) - Complex(norms[m] * norms[m]) * fb.filter(m);
    rep.eigenvector_defect = std::max(rep.eigenvector_defect, r.norm() / norms[m]);
  }
  return rep;
}

void DesignProblem::validate() const {
  validate_norms(norms);
  if (max_iters == 0) throw InputError("max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw InputError("grad_tol must be positive");
  if (!(tight_eps > 0.0)) throw InputError("tight_eps must be positive");
  if (!(verify_tol > 0.0)) throw InputError("verification tolerance must be positive");
}

bool DesignReport::verified(double tol) const {
  if (partition) return partition->passed(tol);
  if (underdetermined) return underdetermined->passed(tol);
  return false;
}

namespace {

/// c[(m * n + m') * |H| + k] = <a_m, T_{h_k} b_m'>.
class Correlator {
 public:
  explicit Correlator(const Subgroup& H) : order_(H.ambient().order()), hcount_(H.order()) {
    const auto& G = H.ambient();
    shift_.resize(hcount_ * order_);
    const auto hidx = H.element_indices();
    for (std::size_t k = 0; k < hcount_; ++k) {
      for (std::size_t x = 0; x < order_; ++x) shift_[k * order_ + x] = G.subtract_index(x, hidx[k]);
    }
  }

  std::vector<Complex> operator()(std::span<const Signal> a, std::span<const Signal> b) const {
    const std::size_t n = a.size();
    std::vector<Complex> c(n * n * hcount_);
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t mp = 0; mp < n; ++mp) {
        for (std::size_t k = 0; k < hcount_; ++k) {
          const std::size_t* s = &shift_[k * order_];
          Complex acc{0.0, 0.0};
          for (std::size_t x = 0; x < order_; ++x) acc += a[m][x] * std::conj(b[mp][s[x]]);
          c[(m * n + mp) * hcount_ + k] = acc;
        }
      }
    }
    return c;
  }

  double potential(std::span<const Signal> f) const {
    double s = 0.0;
    for (const auto& v : (*this)(f, f)) s += std::norm(v);
    return static_cast<double>(hcount_) * s;
  }

  /// Phi(f + d) - Phi(f) for the scale-invariant potential
  ///   Phi(f) = FP(a_0 f_0 / ||f_0||, ..., a_{n-1} f_{n-1} / ||f_{n-1}||),
  /// which equals FP on the constraint set. The expansion keeps every term
  /// proportional to d, so rounding in the norms of f does not leak in.
  double increment(std::span<const Signal> f, std::span<const Signal> d,
                   std::span<const double> targets) const {
    const std::size_t n = f.size();
    const auto c = (*this)(f, f);
    const auto df = (*this)(d, f);
    const auto fd = (*this)(f, d);
    const auto dd = (*this)(d, d);
    std::vector<double> w(n), r1(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double nu = f[m].norm_squared();
      const double dnu = 2.0 * inner(d[m], f[m]).real() + d[m].norm_squared();
      w[m] = targets[m] * targets[m] / nu;
      r1[m] = -dnu / (nu + dnu);
    }
    double s = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t mp = 0; mp < n; ++mp) {
        const double ww = w[m] * w[mp];
        const double rr = (1.0 + r1[m]) * (1.0 + r1[mp]);
        const double rr1 = r1[m] + r1[mp] + r1[m] * r1[mp];
        for (std::size_t k = 0; k < hcount_; ++k) {
          const std::size_t i = (m * n + mp) * hcount_ + k;
          const Complex delta = df[i] + fd[i] + dd[i];
          const double dsq = 2.0 * (std::conj(c[i]) * delta).real() + std::norm(delta);
          s += ww * (dsq * rr + std::norm(c[i]) * rr1);
        }
      }
    }
    return static_cast<double>(hcount_) * s;
  }

 private:
  std::size_t order_;
  std::size_t hcount_;
  std::vector<std::size_t> shift_;
};

Signal gaussian_signal(const GroupSpec& G, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Signal s(G);
  for (std::size_t x = 0; x < G.order(); ++x) {
    const double re = normal(rng);
    const double im = normal(rng);
    s[x] = {re, im};
  }
  return s;
}

void rescale(Signal& f, double target) {
  const double nrm = f.norm();
  f *= Complex(target / nrm);
}

constexpr double kArmijo = 1e-4;
constexpr std::size_t kMaxBacktracks = 60;
constexpr std::size_t kStallLimit = 50;
constexpr std::size_t kMaxRestarts = 3;
constexpr double kFloorTol = 1e-6;
constexpr double kRestartScale = 0.1;

}  // namespace

DesignReport minimize_fp(const DesignProblem& problem) {
  problem.validate();
  const auto& G = problem.group();
  const auto& H = problem.subgroup;
  const std::size_t n = problem.norms.size();
  const std::size_t N = H.index();
  const double hscale = 4.0 * static_cast<double>(H.order());

  const SplitIndex split = split_index(problem.norms, N);
  const double floor = fp_floor(problem.norms, H.order(), N, split.m0);

  std::mt19937_64 rng(problem.seed);
  std::vector<Signal> f;
  f.reserve(n);
  for (std::size_t m = 0; m < n; ++m) {
    f.push_back(gaussian_signal(G, rng));
    rescale(f.back(), problem.norms[m]);
  }

  const Correlator corr(H);
  double fp = corr.potential(f);
  std::vector<double> trajectory{fp};
  std::vector<std::size_t> restarts;
  double grad_norm = 0.0;
  std::size_t stall = 0;
  std::size_t iter = 0;

  auto restart = [&] {
    for (std::size_t m = 0; m < n; ++m) {
      Signal noise = gaussian_signal(G, rng);
      rescale(noise, kRestartScale * problem.norms[m]);
      f[m] += noise;
      rescale(f[m], problem.norms[m]);
    }
    fp = corr.potential(f);
    restarts.push_back(trajectory.size());
    trajectory.push_back(fp);
    stall = 0;
  };

  for (; iter < problem.max_iters; ++iter) {
    const FilterBank fb(H, f);
    const auto g = riemannian_gradient(fb);
    grad_norm = stacked_norm(g);
    if (grad_norm <= problem.grad_tol) {
      if (std::abs(fp - floor) <= kFloorTol * floor || restarts.size() >= kMaxRestarts) break;
      // Stationary above the floor: a saddle.
      restart();
      continue;
    }

    const double upper = block_frame_bounds(build_modrep(fb)).upper;
    double step = std::ldexp(1.0 / (hscale * std::max(upper, 1e-300)), -static_cast<int>(stall));
    bool accepted = false;
    std::vector<Signal> candidate;
    std::vector<Signal> delta;
    double dfp = 0.0;
    auto scaled = [&](double s) {
      std::vector<Signal> d;
      d.reserve(n);
      for (std::size_t m = 0; m < n; ++m) d.push_back(Complex(-s) * g[m]);
      return d;
    };
    std::size_t t = 0;
    for (; t < kMaxBacktracks; ++t, step *= 0.5) {
      delta = scaled(step);
      dfp = corr.increment(f, delta, problem.norms);
      if (dfp <= -kArmijo * step * grad_norm * grad_norm) {
        accepted = true;
        break;
      }
    }
    if (accepted) {
      // The start step can sit at the edge of a two-cycle along the stiffest
      // direction; keep halving while that still lowers the potential.
      for (++t; t < kMaxBacktracks; ++t) {
        auto half = scaled(step * 0.5);
        const double dh = corr.increment(f, half, problem.norms);
        if (dh >= dfp) break;
        step *= 0.5;
        delta = std::move(half);
        dfp = dh;
      }
      candidate.clear();
      for (std::size_t m = 0; m < n; ++m) {
        candidate.push_back(f[m] + delta[m]);
        rescale(candidate.back(), problem.norms[m]);
      }
    }

    if (accepted) {
      f = std::move(candidate);
      fp += dfp;
      trajectory.push_back(fp);
      stall = 0;
    } else if (++stall >= kStallLimit) {
      if (restarts.size() >= kMaxRestarts) break;
      restart();
    }
  }

  FilterBank final_bank(H, f);
  grad_norm = stacked_norm(riemannian_gradient(final_bank));
  const double final_fp = frame_potential_fb(final_bank);

  std::optional<PartitionReport> partition;
  std::optional<UnderdeterminedReport> underdetermined;
  if (split.regime == Regime::underdetermined) {
    underdetermined = verify_underdetermined(final_bank, problem.verify_tol);
  } else {
    partition = verify_theorem(final_bank, split.m0, problem.verify_tol);
  }
  const bool converged =
      grad_norm <= problem.grad_tol && std::abs(final_fp - floor) <= kFloorTol * floor;
  DesignReport rep{.filters = final_bank,
                   .fp_trajectory = std::move(trajectory),
                   .fp = final_fp,
                   .grad_norm = grad_norm,
                   .bounds = frame_bounds(final_bank),
                   .split = split,
                   .fp_floor = floor,
                   .partition = std::move(partition),
                   .underdetermined = std::move(underdetermined),
                   .tight = is_tight(final_bank, problem.tight_eps).tight,
                   .converged = converged,
                   .iterations = iter,
                   .restarts = std::move(restarts)};
  return rep;
}

}  // namespace abelframe

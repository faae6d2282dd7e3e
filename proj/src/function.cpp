#include "orlicz/function.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace orlicz {

struct OrliczFunction::Impl {
  using Spec = std::variant<node::Power, node::PowerScaled, node::ExpMinusOne, node::TLog1p,
                            node::PiecewiseLinear, node::Compose, node::Conjugate, node::HScale>;

  explicit Impl(Spec s) : spec(std::move(s)) {}

  Spec spec;
  // Exact thresholds known at construction; generic nodes fill these lazily.
  std::optional<double> exact_a;
  std::optional<double> exact_b;
  mutable std::once_flag thresholds_once;
  mutable double a = 0.0;
  mutable double b = kInf;
};

struct FunctionAccess {
  static OrliczFunction make(OrliczFunction::Impl::Spec spec, std::optional<double> a = {},
                             std::optional<double> b = {}) {
    auto impl = std::make_shared<OrliczFunction::Impl>(std::move(spec));
    impl->exact_a = a;
    impl->exact_b = b;
    return OrliczFunction(std::move(impl));
  }
  static const OrliczFunction::Impl& impl(const OrliczFunction& f) { return *f.impl_; }
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

double eval_piecewise(const node::PiecewiseLinear& pl, double t) {
  const auto& k = pl.knots;
  const Knot& last = k.back();
  if (t <= last.t) {
    auto it = std::upper_bound(k.begin(), k.end(), t, [](double x, const Knot& kn) { return x < kn.t; });
    if (it == k.begin()) return k.front().value;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    if (it == k.end()) return last.value;
    const double w = (t - lo.t) / (hi.t - lo.t);
    return lo.value + w * (hi.value - lo.value);
  }
  if (pl.cutoff) {
    if (t > *pl.cutoff) return kInf;
    double slope = 0.0;
    if (k.size() >= 2) {
      const Knot& prev = k[k.size() - 2];
      slope = (last.value - prev.value) / (last.t - prev.t);
    }
    return last.value + slope * (t - last.t);
  }
  return last.value + pl.final_slope * (t - last.t);
}

struct SupResult {
  double value;
  bool diverged;
};

template <class G>
double golden_max(const G& g, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double best = std::max(g(lo), g(hi));
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = g(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = g(x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

SupResult conjugate_sup(const OrliczFunction& phi, double u) {
  if (std::isnan(u) || u < 0.0) throw DomainError("conjugate evaluated at a negative argument");
  if (u == 0.0) return {0.0, false};
  if (std::isinf(u)) return {kInf, true};
  const double b = phi.b_phi();
  if (!(b > 0.0)) return {0.0, false};

  auto g = [&](double v) {
    const double f = phi(v);
    if (std::isinf(f)) return -kInf;
    return u * v - f;
  };

  constexpr double kGridLo = 1e-6;
  constexpr double kGridHi = 1e6;
  constexpr std::size_t kPerDecade = 512;
  const double v_hi = std::min(b, kGridHi);
  const double v_lo = std::min(kGridLo, v_hi * 1e-3);
  const auto grid = logspace_per_decade(v_lo, v_hi, kPerDecade);
  const std::size_t n = grid.size();

  std::size_t best = 0;
  double best_val = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double val = g(grid[i]);
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  if (best_val == kInf) return {kInf, true};

  double lo = grid[best > 0 ? best - 1 : 0];
  double hi = grid[std::min(best + 1, n - 1)];

  if (best == n - 1 && v_hi < b) {
    // Supremum lies right of the grid: double until the objective turns.
    const double cap = std::min(b, 1e300);
    double before = n > 1 ? grid[n - 2] : v_hi / 2;
    double prev = v_hi;
    double prev_val = best_val;
    for (;;) {
      double next = prev * 2.0;
      const bool at_cap = next >= cap;
      if (at_cap) next = cap;
      const double nv = g(next);
      if (nv == kInf) return {kInf, true};
      if (nv > prev_val) {
        before = prev;
        prev = next;
        prev_val = nv;
        best_val = nv;
        if (at_cap) {
          if (cap < b) return {kInf, true};
          lo = before;
          hi = cap;
          break;
        }
      } else {
        lo = before;
        hi = next;
        break;
      }
    }
  } else if (best == 0 && v_lo > 1e-300) {
    double after = n > 1 ? grid[1] : v_lo * 2;
    double prev = v_lo;
    double prev_val = best_val;
    for (;;) {
      const double next = prev / 2.0;
      if (next < 1e-300) return {std::max(prev_val, 0.0), false};
      const double nv = g(next);
      if (nv > prev_val) {
        after = prev;
        prev = next;
        prev_val = nv;
        best_val = nv;
      } else {
        lo = next;
        hi = after;
        break;
      }
    }
  }

  const double refined = golden_max(g, lo, hi);
  return {std::max({best_val, refined, 0.0}), false};
}

std::optional<OrliczFunction> closed_conjugate(const OrliczFunction& phi);

// Underlying closed-form node, looking through resolved conjugates.
OrliczFunction resolve(const OrliczFunction& phi) {
  if (const auto* c = phi.as_conjugate(); c && c->closed_form) return resolve(*c->closed_form);
  return phi;
}

std::optional<OrliczFunction> piecewise_conjugate(const node::PiecewiseLinear& pl) {
  const auto& k = pl.knots;
  if (k.front().t != 0.0 || k.front().value != 0.0) return std::nullopt;
  std::vector<Knot> pts = k;
  double tail_slope = pl.final_slope;
  if (pl.cutoff) {
    const double slope =
        k.size() >= 2 ? (k.back().value - k[k.size() - 2].value) / (k.back().t - k[k.size() - 2].t) : 0.0;
    if (*pl.cutoff > k.back().t) pts.push_back({*pl.cutoff, k.back().value + slope * (*pl.cutoff - k.back().t)});
  }
  std::vector<double> slopes;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    slopes.push_back((pts[i].value - pts[i - 1].value) / (pts[i].t - pts[i - 1].t));
  }
  if (!pl.cutoff) slopes.push_back(tail_slope);
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i] < slopes[i - 1] - 1e-12 * (1.0 + std::abs(slopes[i - 1]))) return std::nullopt;
  }
  if (!slopes.empty() && slopes.front() < 0.0) return std::nullopt;

  // phi*(u) = max_i (u t_i - y_i); linear between consecutive slopes.
  std::vector<Knot> out{{0.0, 0.0}};
  auto push = [&](double u, double val) {
    if (u <= out.back().t) {
      out.back().value = std::max(out.back().value, val);
      return;
    }
    out.push_back({u, val});
  };
  const std::size_t finite_slopes = pl.cutoff ? slopes.size() : slopes.size() - 1;
  for (std::size_t i = 0; i < finite_slopes; ++i) {
    const double s = slopes[i];
    push(s, s * pts[i].t - pts[i].value);
  }
  if (pl.cutoff) {
    // Beyond the last slope the maximiser is the cutoff point itself.
    return OrliczFunction::piecewise_linear(out, pts.back().t);
  }
  const double s = tail_slope;
  push(s, s * pts.back().t - pts.back().value);
  return OrliczFunction::piecewise_linear_cutoff(out, out.back().t);
}

std::optional<OrliczFunction> closed_conjugate(const OrliczFunction& phi_in) {
  const OrliczFunction phi = resolve(phi_in);
  if (const auto* p = phi.as_power()) {
    if (p->p == 1.0) return OrliczFunction::piecewise_linear_cutoff({{0.0, 0.0}}, 1.0);
    if (p->p > 1.0) {
      const double q = p->p / (p->p - 1.0);
      return OrliczFunction::power_scaled((p->p - 1.0) * std::pow(p->p, -q), q);
    }
    return std::nullopt;
  }
  if (const auto* ps = phi.as_power_scaled()) {
    if (ps->p == 1.0) return OrliczFunction::piecewise_linear_cutoff({{0.0, 0.0}}, ps->c);
    if (ps->p > 1.0) {
      const double q = ps->p / (ps->p - 1.0);
      const double coef = (ps->p - 1.0) * std::pow(ps->p, -q) * std::pow(ps->c, -1.0 / (ps->p - 1.0));
      return OrliczFunction::power_scaled(coef, q);
    }
    return std::nullopt;
  }
  if (const auto* pl = phi.as_piecewise_linear()) return piecewise_conjugate(*pl);
  if (const auto* h = phi.as_hscale()) {
    if (auto inner = closed_conjugate(h->of)) return OrliczFunction::hscale(1.0 / h->a, *inner);
  }
  return std::nullopt;
}

// Switch point of a monotone predicate (false then true), scanning u = 2^k
// then bisecting. Returns the true side by default, the false side when
// `last_false` is set; 0 when pred(2^lo_k) already holds, +inf when it never does.
template <class Pred>
double threshold_scan(const Pred& pred, int lo_k, int hi_k, bool last_false = false) {
  for (int k = lo_k; k <= hi_k; ++k) {
    const double u = std::ldexp(1.0, k);
    if (pred(u)) {
      if (k == lo_k) return 0.0;
      double lo = std::ldexp(1.0, k - 1);
      double hi = u;
      for (int i = 0; i < 200; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid)) hi = mid; else lo = mid;
      }
      return last_false ? lo : hi;
    }
  }
  return kInf;
}

void compute_thresholds(const OrliczFunction& self, const OrliczFunction::Impl& impl) {
  if (impl.exact_a && impl.exact_b) {
    impl.a = *impl.exact_a;
    impl.b = *impl.exact_b;
    return;
  }
  std::visit(overloaded{
                 [&](const node::Compose& c) {
                   const double oa = c.outer.a_phi();
                   const double ob = c.outer.b_phi();
                   impl.a = oa == 0.0 ? c.inner.a_phi() : formal_inverse(c.inner, oa);
                   impl.b = std::isinf(ob) ? c.inner.b_phi() : std::min(c.inner.b_phi(), formal_inverse(c.inner, ob));
                 },
                 [&](const node::HScale& h) {
                   impl.a = h.of.a_phi() / h.a;
                   impl.b = h.of.b_phi() / h.a;
                 },
                 [&](const node::Conjugate& c) {
                   if (c.closed_form) {
                     impl.a = c.closed_form->a_phi();
                     impl.b = c.closed_form->b_phi();
                     return;
                   }
                   impl.a = threshold_scan([&](double u) { return conjugate_sup(c.of, u).value > 0.0; }, -60, 60);
                   if (std::isfinite(c.of.b_phi())) {
                     impl.b = kInf;
                   } else {
                     impl.b = threshold_scan([&](double u) { return conjugate_sup(c.of, u).diverged; }, -60, 60, true);
                   }
                   (void)self;
                 },
                 [&](const auto&) {
                   impl.a = 0.0;
                   impl.b = kInf;
                 },
             },
             impl.spec);
}

std::string fmt_num(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

OrliczFunction OrliczFunction::power(double p) {
  require_finite(p, "power exponent");
  if (p < 1.0) throw DomainError("power exponent must be >= 1");
  return FunctionAccess::make(node::Power{p}, 0.0, kInf);
}

OrliczFunction OrliczFunction::power_scaled(double c, double p) {
  require_finite(c, "power_scaled coefficient");
  require_finite(p, "power_scaled exponent");
  if (!(c > 0.0)) throw DomainError("power_scaled coefficient must be > 0");
  if (p < 1.0) throw DomainError("power_scaled exponent must be >= 1");
  return FunctionAccess::make(node::PowerScaled{c, p}, 0.0, kInf);
}

OrliczFunction OrliczFunction::exp_minus_one() { return FunctionAccess::make(node::ExpMinusOne{}, 0.0, kInf); }

OrliczFunction OrliczFunction::t_log1p() { return FunctionAccess::make(node::TLog1p{}, 0.0, kInf); }

namespace {

std::vector<Knot> normalize_knots(std::vector<Knot> knots) {
  if (knots.empty()) throw std::invalid_argument("piecewise_linear needs at least one knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    require_finite(knots[i].t, "knot abscissa");
    require_finite(knots[i].value, "knot value");
    if (knots[i].t < 0.0) throw DomainError("knot abscissae must be nonnegative");
    if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
      throw std::invalid_argument("knot abscissae must be strictly increasing");
    }
  }
  if (knots.front().t > 0.0) knots.insert(knots.begin(), Knot{0.0, 0.0});
  return knots;
}

// a_phi for a piecewise-linear node: end of the initial run of zero values.
double piecewise_a(const node::PiecewiseLinear& pl) {
  const auto& k = pl.knots;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].value != 0.0) return i == 0 ? 0.0 : k[i - 1].t;
  }
  if (pl.cutoff) return *pl.cutoff;
  return pl.final_slope != 0.0 ? k.back().t : kInf;
}

}  // namespace

OrliczFunction OrliczFunction::piecewise_linear(std::vector<Knot> knots, double final_slope) {
  require_finite(final_slope, "final slope");
  node::PiecewiseLinear pl{normalize_knots(std::move(knots)), final_slope, std::nullopt};
  const double a = piecewise_a(pl);
  return FunctionAccess::make(std::move(pl), a, kInf);
}

OrliczFunction OrliczFunction::piecewise_linear_cutoff(std::vector<Knot> knots, double cutoff) {
  require_finite(cutoff, "cutoff");
  node::PiecewiseLinear pl{normalize_knots(std::move(knots)), 0.0, cutoff};
  if (cutoff < pl.knots.back().t) throw std::invalid_argument("cutoff must not precede the last knot");
  if (!(cutoff > 0.0)) throw DomainError("cutoff must be > 0");
  const double a = piecewise_a(pl);
  return FunctionAccess::make(std::move(pl), a, cutoff);
}

OrliczFunction OrliczFunction::hscale(double a, OrliczFunction of) {
  require_finite(a, "hscale factor");
  if (!(a > 0.0)) throw DomainError("hscale factor must be > 0");
  return FunctionAccess::make(node::HScale{a, std::move(of)});
}

Composition compose(const OrliczFunction& outer, const OrliczFunction& inner) {
  OrliczFunction f = FunctionAccess::make(node::Compose{outer, inner});
  ValidityReport verdict = is_orlicz(f);
  return {std::move(f), std::move(verdict)};
}

OrliczFunction conjugate(const OrliczFunction& phi, ConjugateMethod method) {
  std::optional<OrliczFunction> closed;
  if (method == ConjugateMethod::automatic) closed = closed_conjugate(phi);
  return FunctionAccess::make(node::Conjugate{phi, std::move(closed)});
}

// ---------------------------------------------------------------------------
// Evaluation

double OrliczFunction::operator()(double t) const {
  if (std::isnan(t) || t < 0.0) throw DomainError("Orlicz function evaluated at a negative argument");
  return std::visit(overloaded{
                        [&](const node::Power& p) { return t == 0.0 ? 0.0 : std::pow(t, p.p); },
                        [&](const node::PowerScaled& p) { return t == 0.0 ? 0.0 : p.c * std::pow(t, p.p); },
                        [&](const node::ExpMinusOne&) { return std::expm1(t); },
                        [&](const node::TLog1p&) { return t * std::log1p(t); },
                        [&](const node::PiecewiseLinear& pl) { return eval_piecewise(pl, t); },
                        [&](const node::Compose& c) {
                          const double y = c.inner(t);
                          return std::isinf(y) ? kInf : c.outer(y);
                        },
                        [&](const node::Conjugate& c) {
                          return c.closed_form ? (*c.closed_form)(t) : conjugate_sup(c.of, t).value;
                        },
                        [&](const node::HScale& h) { return h.of(h.a * t); },
                    },
                    impl_->spec);
}

double numeric_conjugate_value(const OrliczFunction& phi, double u) { return conjugate_sup(phi, u).value; }

double OrliczFunction::a_phi() const {
  std::call_once(impl_->thresholds_once, [&] { compute_thresholds(*this, *impl_); });
  return impl_->a;
}

double OrliczFunction::b_phi() const {
  std::call_once(impl_->thresholds_once, [&] { compute_thresholds(*this, *impl_); });
  return impl_->b;
}

NodeKind OrliczFunction::kind() const {
  return std::visit(overloaded{
                        [](const node::Power&) { return NodeKind::power; },
                        [](const node::PowerScaled&) { return NodeKind::power_scaled; },
                        [](const node::ExpMinusOne&) { return NodeKind::exp_minus_one; },
                        [](const node::TLog1p&) { return NodeKind::t_log1p; },
                        [](const node::PiecewiseLinear&) { return NodeKind::piecewise_linear; },
                        [](const node::Compose&) { return NodeKind::compose; },
                        [](const node::Conjugate&) { return NodeKind::conjugate; },
                        [](const node::HScale&) { return NodeKind::hscale; },
                    },
                    impl_->spec);
}

const node::Power* OrliczFunction::as_power() const { return std::get_if<node::Power>(&impl_->spec); }
const node::PowerScaled* OrliczFunction::as_power_scaled() const {
  return std::get_if<node::PowerScaled>(&impl_->spec);
}
const node::PiecewiseLinear* OrliczFunction::as_piecewise_linear() const {
  return std::get_if<node::PiecewiseLinear>(&impl_->spec);
}
const node::Compose* OrliczFunction::as_compose() const { return std::get_if<node::Compose>(&impl_->spec); }
const node::Conjugate* OrliczFunction::as_conjugate() const { return std::get_if<node::Conjugate>(&impl_->spec); }
const node::HScale* OrliczFunction::as_hscale() const { return std::get_if<node::HScale>(&impl_->spec); }

std::string OrliczFunction::describe() const {
  return std::visit(overloaded{
                        [](const node::Power& p) { return "power(" + fmt_num(p.p) + ")"; },
                        [](const node::PowerScaled& p) {
                          return "power_scaled(" + fmt_num(p.c) + ", " + fmt_num(p.p) + ")";
                        },
                        [](const node::ExpMinusOne&) { return std::string("exp_minus_one"); },
                        [](const node::TLog1p&) { return std::string("t_log1p"); },
                        [](const node::PiecewiseLinear& pl) {
                          std::string s = "piecewise_linear[";
                          for (std::size_t i = 0; i < pl.knots.size(); ++i) {
                            if (i) s += ", ";
                            s += "(" + fmt_num(pl.knots[i].t) + ", " + fmt_num(pl.knots[i].value) + ")";
                          }
                          s += "]";
                          s += pl.cutoff ? "; cutoff " + fmt_num(*pl.cutoff) : "; slope " + fmt_num(pl.final_slope);
                          return s;
                        },
                        [](const node::Compose& c) {
                          return "compose(" + c.outer.describe() + ", " + c.inner.describe() + ")";
                        },
                        [](const node::Conjugate& c) { return "conjugate(" + c.of.describe() + ")"; },
                        [](const node::HScale& h) { return "hscale(" + fmt_num(h.a) + ", " + h.of.describe() + ")"; },
                    },
                    impl_->spec);
}

// ---------------------------------------------------------------------------
// Inverse and Young

double formal_inverse(const OrliczFunction& phi, double t) {
  if (std::isnan(t) || t < 0.0) throw DomainError("formal_inverse at a negative argument");
  const double a = phi.a_phi();
  const double b = phi.b_phi();
  if (t == 0.0) return a;
  if (std::isinf(t)) return b;
  if (std::isfinite(b) && phi(b) <= t) return b;

  double lo = a;
  double hi = std::max(2.0 * a, 1.0);
  if (hi > b) hi = b;
  while (phi(hi) <= t) {
    lo = hi;
    hi *= 2.0;
    if (hi >= b) {
      hi = b;
      break;
    }
    if (hi > 1e300) return kInf;
  }
  if (lo == 0.0) {
    // Geometric descent so tiny targets keep full relative precision.
    while (hi > 1e-300 && phi(hi * 0.5) > t) hi *= 0.5;
    if (hi <= 1e-300) return 0.0;
    lo = hi * 0.5;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) <= t) lo = mid; else hi = mid;
  }
  return lo;
}

double young_gap(const OrliczFunction& phi, const OrliczFunction& phi_star, double s, double t) {
  if (std::isnan(s) || std::isnan(t) || s < 0.0 || t < 0.0) throw DomainError("young_gap needs s, t >= 0");
  const double fs = phi(s);
  const double ft = phi_star(t);
  if (std::isinf(fs) || std::isinf(ft)) return kInf;
  return fs + ft - s * t;
}

double young_gap(const OrliczFunction& phi, double s, double t) {
  return young_gap(phi, conjugate(phi), s, t);
}

// ---------------------------------------------------------------------------
// Axioms

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::none: return "none";
    case Axiom::zero_at_origin: return "zero_at_origin";
    case Axiom::nondecreasing: return "nondecreasing";
    case Axiom::convex: return "convex";
    case Axiom::left_continuous: return "left_continuous";
    case Axiom::nondegenerate: return "nondegenerate";
    case Axiom::thresholds: return "thresholds";
  }
  return "unknown";
}

ValidityReport is_orlicz(const OrliczFunction& phi) {
  ValidityReport r;
  auto fail = [&](Axiom ax, double at, std::string detail) {
    r.valid = false;
    r.failed = ax;
    r.witness = at;
    r.detail = std::move(detail);
    return r;
  };

  const double a = phi.a_phi();
  const double b = phi.b_phi();
  if (!(b > 0.0)) return fail(Axiom::nondegenerate, 0.0, "infinite on all of (0, inf)");
  if (std::isinf(a)) return fail(Axiom::nondegenerate, 0.0, "identically zero on (0, inf)");

  std::vector<double> grid{0.0};
  const double top = std::min(b, 1e4);
  if (top > 1e-4) {
    const auto lg = logspace_per_decade(1e-4, top, 32);
    grid.insert(grid.end(), lg.begin(), lg.end());
  } else {
    grid.push_back(top * 0.5);
  }
  if (std::isfinite(b)) grid.push_back(b);
  if (a > 0.0 && a < b) {
    grid.push_back(a);
    grid.push_back(a + 0.5 * (std::min(b, 2.0 * a + 1.0) - a));
  }
  if (const auto* pl = phi.as_piecewise_linear()) {
    for (std::size_t i = 0; i < pl->knots.size(); ++i) {
      grid.push_back(pl->knots[i].t);
      if (i + 1 < pl->knots.size()) grid.push_back(0.5 * (pl->knots[i].t + pl->knots[i + 1].t));
    }
    grid.push_back(pl->knots.back().t + 1.0);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [&](double t) { return t > b; }), grid.end());

  std::vector<double> ts;
  std::vector<double> fs;
  for (double t : grid) {
    const double f = phi(t);
    if (std::isinf(f)) break;  // overflow or the left limit at b; shape checks stop here
    ts.push_back(t);
    fs.push_back(f);
  }
  r.grid_points = ts.size();

  if (fs.empty() || std::abs(fs.front()) > 1e-12) {
    return fail(Axiom::zero_at_origin, 0.0, "phi(0) != 0");
  }
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (fs[i] < fs[i - 1] - 1e-12 * (1.0 + std::abs(fs[i - 1]))) {
      return fail(Axiom::nondecreasing, ts[i], "phi decreases");
    }
  }
  for (std::size_t i = 1; i + 1 < fs.size(); ++i) {
    const double s0 = (fs[i] - fs[i - 1]) / (ts[i] - ts[i - 1]);
    const double s1 = (fs[i + 1] - fs[i]) / (ts[i + 1] - ts[i]);
    if (s1 - s0 < -kConvexityTolerance * (1.0 + std::abs(s0) + std::abs(s1))) {
      return fail(Axiom::convex, ts[i], "negative second divided difference");
    }
  }

  bool positive = false;
  for (std::size_t i = 1; i < fs.size(); ++i) positive = positive || fs[i] > 0.0;
  if (!positive && fs.size() == grid.size()) {
    // Every sampled point is zero and finite; look past the grid.
    const double probe = std::isfinite(b) ? b * (1.0 + 1e-9) + 1e-300 : 1e12;
    if (!(phi(probe) > 0.0)) return fail(Axiom::nondegenerate, probe, "identically zero on the grid");
  }

  if (std::isfinite(b)) {
    const double fb = phi(b);
    const double far = phi(b * (1.0 - 1e-6));
    const double near = phi(b * (1.0 - 1e-9));
    if (std::isfinite(fb)) {
      if (!std::isfinite(near) ||
          std::abs(fb - near) > 1e-2 * std::abs(fb - far) + 1e-6 * (1.0 + std::abs(fb))) {
        return fail(Axiom::left_continuous, b, "jump at b_phi");
      }
    } else if (std::isfinite(near) && std::isfinite(far) && near <= 10.0 * far + 1.0) {
      return fail(Axiom::left_continuous, b, "phi(b_phi) = inf but the left limit is finite");
    }
    const double beyond = b * (1.0 + 1e-9) + 1e-300;
    if (std::isfinite(phi(beyond))) return fail(Axiom::thresholds, beyond, "finite beyond b_phi");
  }
  if (a > 0.0 && phi(a * (1.0 - 1e-9)) != 0.0) {
    return fail(Axiom::thresholds, a * (1.0 - 1e-9), "nonzero below a_phi");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Limits

std::string to_string(LimitClass c) {
  switch (c) {
    case LimitClass::zero: return "zero";
    case LimitClass::finite: return "finite";
    case LimitClass::infinite: return "infinite";
  }
  return "unknown";
}

namespace {

// Last three successive quotients all below 1 - 1e-3: geometric decay.
bool decays_to_zero(const std::vector<double>& r) {
  if (r.empty()) return false;
  if (r.back() == 0.0) return true;
  if (r.size() < 4) return false;
  const std::size_t n = r.size();
  for (std::size_t i = n - 3; i < n; ++i) {
    if (!(r[i - 1] > 0.0) || !std::isfinite(r[i - 1])) return false;
    if (!(r[i] / r[i - 1] <= 1.0 - 1e-3)) return false;
  }
  return true;
}

}  // namespace

NFunctionLimits n_function_limits(const OrliczFunction& phi, int max_k) {
  std::vector<double> small;
  std::vector<double> large;
  for (int k = 0; k <= max_k; ++k) {
    const double ts = std::ldexp(1.0, -k);
    const double tl = std::ldexp(1.0, k);
    small.push_back(phi(ts) / ts);
    large.push_back(phi(tl) / tl);
  }

  NFunctionLimits out{};
  if (decays_to_zero(small)) {
    out.zero_class = LimitClass::zero;
    out.at_zero = 0.0;
  } else {
    out.zero_class = std::isinf(small.back()) ? LimitClass::infinite : LimitClass::finite;
    out.at_zero = small.back();
  }

  bool diverges = std::any_of(large.begin(), large.end(), [](double x) { return std::isinf(x); });
  const std::size_t n = large.size();
  if (!diverges && n > 30) {
    bool tenfold = true;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t i = n - 1 - 10 * j;
      if (!(large[i] > 10.0 * large[i - 10])) tenfold = false;
    }
    diverges = tenfold;
  }
  if (!diverges && n >= 4) {
    const double d1 = large[n - 3] - large[n - 4];
    const double d2 = large[n - 2] - large[n - 3];
    const double d3 = large[n - 1] - large[n - 2];
    const bool sustained = d2 >= 0.75 * d1 && d3 >= 0.75 * d2 && d1 > 0.0;
    diverges = sustained && d3 > 1e-9 * (1.0 + std::abs(large.back()));
  }
  out.infinity_class = diverges ? LimitClass::infinite : LimitClass::finite;
  out.at_infinity = diverges ? kInf : large.back();
  out.n_function = out.zero_class == LimitClass::zero && out.infinity_class == LimitClass::infinite;
  return out;
}

NfnReport lemma_nfn_check(const OrliczFunction& phi, double q, std::size_t samples) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("lemma_nfn_check needs 0 < q < 1");
  if (samples < 4) throw std::invalid_argument("lemma_nfn_check needs at least 4 samples");

  NfnReport rep{};
  std::vector<double> large;
  std::vector<double> small;
  std::vector<double> small_inv;
  for (std::size_t k = 0; k <= samples; ++k) {
    const double e = static_cast<double>(k);
    const double tl = std::ldexp(1.0, static_cast<int>(k));
    const double ts = std::ldexp(1.0, -static_cast<int>(k));
    large.push_back(phi(tl) / std::exp2(e * q));
    small.push_back(phi(ts) / std::exp2(-e * q));
    small_inv.push_back(phi(ts) / std::exp2(-e / q));
  }

  std::size_t tail = large.size() - 1;
  while (tail > 0 && large[tail] >= large[tail - 1] * (1.0 - 1e-12)) --tail;
  rep.tail_start = tail;
  std::size_t first_pos = tail;
  while (first_pos < large.size() && !(large[first_pos] > 0.0)) ++first_pos;
  rep.large_t_last_ratio = large.back();
  rep.large_t_holds = std::isinf(large.back()) ||
                      (first_pos < large.size() && large.back() >= kNfnDivergenceFactor * large[first_pos]);

  rep.small_t_last_ratio = small.back();
  if (phi.a_phi() > 0.0) {
    rep.small_t_vacuous = true;
    rep.small_t_holds = true;
    rep.small_t_inverse_exponent = true;
  } else {
    rep.small_t_vacuous = false;
    rep.small_t_holds = decays_to_zero(small);
    rep.small_t_inverse_exponent = decays_to_zero(small_inv);
  }
  return rep;
}

}  // namespace orlicz

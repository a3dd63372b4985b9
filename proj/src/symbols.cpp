#include "bergman/symbols.hpp"

#include <math.h>  // pchip.hpp calls isnan unqualified

#include <algorithm>
#include <boost/math/interpolators/pchip.hpp>
#include <cmath>
#include <random>

#include "bergman/errors.hpp"

namespace bergman {

struct RadialProfile::Interpolant {
  boost::math::interpolators::pchip<std::vector<double>> spline;
  double lo;
  double hi;
};

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ConfigError(std::string(what) + ": non-finite value");
  }
}

void require_increasing(const std::vector<double>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) throw ConfigError(std::string(what) + " must be strictly increasing");
  }
}

}  // namespace

RadialProfile::RadialProfile(Data d) : data_(std::move(d)) {
  if (const auto* s = std::get_if<Sampled>(&data_)) {
    auto spline = boost::math::interpolators::pchip<std::vector<double>>(
        std::vector<double>(s->grid), std::vector<double>(s->values));
    interp_ = std::make_shared<const Interpolant>(Interpolant{std::move(spline), s->grid.front(), s->grid.back()});
  }
}

RadialProfile RadialProfile::poly_t2(std::vector<double> coeffs) {
  require_finite(coeffs, "poly_t2");
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  return RadialProfile(PolyInT2{std::move(coeffs)});
}

RadialProfile RadialProfile::power_t(double exponent) {
  if (!std::isfinite(exponent) || exponent < 0.0) throw ConfigError("power_t exponent must be finite and >= 0");
  return RadialProfile(PowerT{exponent});
}

RadialProfile RadialProfile::step(std::vector<double> breaks, std::vector<double> values) {
  require_finite(breaks, "step.breaks");
  require_finite(values, "step.values");
  if (breaks.size() < 2) throw ConfigError("step.breaks needs at least two entries");
  if (breaks.front() != 0.0 || breaks.back() != 1.0) throw ConfigError("step.breaks must start at 0 and end at 1");
  require_increasing(breaks, "step.breaks");
  if (values.size() + 1 != breaks.size()) throw ConfigError("step.values must have one entry per interval");
  return RadialProfile(Step{std::move(breaks), std::move(values)});
}

RadialProfile RadialProfile::sampled(std::vector<double> grid, std::vector<double> values) {
  require_finite(grid, "sampled.grid");
  require_finite(values, "sampled.values");
  if (grid.size() < 4) throw ConfigError("sampled.grid needs at least four points");
  if (grid.size() != values.size()) throw ConfigError("sampled.grid and sampled.values differ in length");
  if (grid.front() < 0.0 || grid.back() > 1.0) throw ConfigError("sampled.grid must lie within [0,1]");
  require_increasing(grid, "sampled.grid");
  return RadialProfile(Sampled{std::move(grid), std::move(values)});
}

double RadialProfile::operator()(double t) const {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("radial profile evaluated outside [0,1)");
  return std::visit(
      [&](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolyInT2>) {
          const double u = t * t;
          double acc = 0.0;
          for (auto it = v.coeffs.rbegin(); it != v.coeffs.rend(); ++it) acc = acc * u + *it;
          return acc;
        } else if constexpr (std::is_same_v<T, PowerT>) {
          return std::pow(t, 2.0 * v.exponent);
        } else if constexpr (std::is_same_v<T, Step>) {
          auto it = std::upper_bound(v.breaks.begin(), v.breaks.end(), t);
          const auto idx = static_cast<std::size_t>(it - v.breaks.begin()) - 1;
          return v.values[std::min(idx, v.values.size() - 1)];
        } else {
          return interp_->spline(std::clamp(t, interp_->lo, interp_->hi));
        }
      },
      data_);
}

double eval_radial(const RadialProfile& rho, double t) { return rho(t); }

double RadialProfile::sup_bound() const {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolyInT2>) {
          double s = 0.0;
          for (double a : v.coeffs) s += std::abs(a);
          return s;
        } else if constexpr (std::is_same_v<T, PowerT>) {
          return 1.0;
        } else {
          double s = 0.0;
          for (double a : v.values) s = std::max(s, std::abs(a));
          return s;
        }
      },
      data_);
}

std::optional<std::vector<double>> RadialProfile::u_polynomial() const {
  if (const auto* p = std::get_if<PolyInT2>(&data_)) return p->coeffs;
  if (const auto* p = std::get_if<PowerT>(&data_)) {
    if (p->exponent == std::floor(p->exponent) && p->exponent <= 4096.0) {
      std::vector<double> c(static_cast<std::size_t>(p->exponent) + 1, 0.0);
      c.back() = 1.0;
      return c;
    }
  }
  return std::nullopt;
}

int RadialProfile::u_degree() const {
  auto poly = u_polynomial();
  if (!poly) return -1;
  for (int d = static_cast<int>(poly->size()) - 1; d >= 0; --d) {
    if ((*poly)[static_cast<std::size_t>(d)] != 0.0) return d;
  }
  return -1;
}

std::vector<double> RadialProfile::u_breakpoints() const {
  std::vector<double> out;
  if (const auto* s = std::get_if<Step>(&data_)) {
    for (std::size_t i = 1; i + 1 < s->breaks.size(); ++i) out.push_back(s->breaks[i] * s->breaks[i]);
  } else if (const auto* s = std::get_if<Sampled>(&data_)) {
    for (double g : s->grid) {
      if (g > 0.0 && g < 1.0) out.push_back(g * g);
    }
  }
  return out;
}

RadialProfile RadialProfile::scaled(double c) const {
  return std::visit(
      [&](const auto& v) -> RadialProfile {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolyInT2>) {
          auto coeffs = v.coeffs;
          for (double& a : coeffs) a *= c;
          return poly_t2(std::move(coeffs));
        } else if constexpr (std::is_same_v<T, PowerT>) {
          std::vector<double> coeffs;
          if (auto poly = u_polynomial()) {
            coeffs = *poly;
            for (double& a : coeffs) a *= c;
            return poly_t2(std::move(coeffs));
          }
          throw ConfigError("cannot scale a non-integer power_t profile");
        } else if constexpr (std::is_same_v<T, Step>) {
          auto values = v.values;
          for (double& a : values) a *= c;
          return step(v.breaks, std::move(values));
        } else {
          auto values = v.values;
          for (double& a : values) a *= c;
          return sampled(v.grid, std::move(values));
        }
      },
      data_);
}

std::pair<int, std::vector<double>> RadialProfile::key() const {
  std::vector<double> params;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolyInT2>) {
          params = v.coeffs;
        } else if constexpr (std::is_same_v<T, PowerT>) {
          params = {v.exponent};
        } else {
          const auto& xs = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<T, Step>) return v.breaks;
            else return v.grid;
          }();
          params.push_back(static_cast<double>(xs.size()));
          params.insert(params.end(), xs.begin(), xs.end());
          params.insert(params.end(), v.values.begin(), v.values.end());
        }
      },
      data_);
  return {static_cast<int>(data_.index()), std::move(params)};
}

// ---------------------------------------------------------------------------

namespace {

bool term_less(const SymbolTerm& a, const SymbolTerm& b) {
  if (a.p != b.p) return a.p < b.p;
  if (a.q != b.q) return a.q < b.q;
  return a.rho < b.rho;
}

bool same_slot(const SymbolTerm& a, const SymbolTerm& b) { return a.p == b.p && a.q == b.q && a.rho == b.rho; }

}  // namespace

SymbolExpr::SymbolExpr(int dim, std::vector<SymbolTerm> terms) : dim_(dim) {
  if (dim < 1) throw ConfigError("symbol dimension must be >= 1");
  for (const auto& t : terms) {
    if (t.p.dim() != dim || t.q.dim() != dim) throw ConfigError("symbol term multi-index dimension mismatch");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) throw ConfigError("non-finite coefficient");
  }
  std::stable_sort(terms.begin(), terms.end(), term_less);
  for (auto& t : terms) {
    if (!terms_.empty() && same_slot(terms_.back(), t)) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const SymbolTerm& t) { return t.coeff == Complex(0.0, 0.0); });
}

SymbolExpr SymbolExpr::radial(int dim, RadialProfile rho, Complex c) {
  return SymbolExpr(dim, {SymbolTerm{c, MultiIndex::zero(dim), MultiIndex::zero(dim), std::move(rho)}});
}

SymbolExpr SymbolExpr::monomial(int dim, MultiIndex p, MultiIndex q, Complex c) {
  return SymbolExpr(dim, {SymbolTerm{c, std::move(p), std::move(q), RadialProfile::constant(1.0)}});
}

bool SymbolExpr::is_radial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) { return t.p.is_zero() && t.q.is_zero(); });
}

bool SymbolExpr::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const SymbolTerm& t) { return t.rho.is_polynomial(); });
}

double SymbolExpr::sup_bound() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff) * t.rho.sup_bound();
  return s;
}

int SymbolExpr::support_degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    const int du = t.rho.u_degree();
    if (!t.rho.is_polynomial()) throw ConfigError("support degree requested for a non-polynomial symbol");
    deg = std::max(deg, std::max(t.p.degree(), t.q.degree()) + std::max(du, 0));
  }
  return deg;
}

SymbolExpr SymbolExpr::conj() const {
  std::vector<SymbolTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(SymbolTerm{std::conj(t.coeff), t.q, t.p, t.rho});
  return SymbolExpr(dim_, std::move(out));
}

SymbolExpr SymbolExpr::scaled(Complex c) const {
  auto out = terms_;
  for (auto& t : out) t.coeff *= c;
  return SymbolExpr(dim_, std::move(out));
}

SymbolExpr SymbolExpr::operator+(const SymbolExpr& other) const {
  if (other.dim_ != dim_) throw ConfigError("symbol dimension mismatch");
  auto out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return SymbolExpr(dim_, std::move(out));
}

bool SymbolExpr::operator==(const SymbolExpr& other) const {
  if (dim_ != other.dim_ || terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!same_slot(terms_[i], other.terms_[i]) || terms_[i].coeff != other.terms_[i].coeff) return false;
  }
  return true;
}

Complex eval_symbol(const SymbolExpr& f, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != f.dim()) throw ConfigError("evaluation point has the wrong dimension");
  double r2 = 0.0;
  for (const auto& zi : z) r2 += std::norm(zi);
  const double r = std::sqrt(r2);
  if (!(r < 1.0)) throw DomainError("symbol evaluated outside the open unit ball");

  Complex acc = 0.0;
  for (const auto& t : f.terms()) {
    Complex mono = t.coeff;
    for (int i = 0; i < f.dim(); ++i) {
      const auto zi = z[static_cast<std::size_t>(i)];
      for (int e = 0; e < t.p[i]; ++e) mono *= zi;
      for (int e = 0; e < t.q[i]; ++e) mono *= std::conj(zi);
    }
    acc += mono * t.rho(r);
  }
  return acc;
}

std::map<MonomialPair, Complex> expand_polynomial(const SymbolExpr& f) {
  std::map<MonomialPair, Complex> out;
  for (const auto& t : f.terms()) {
    auto poly = t.rho.u_polynomial();
    if (!poly) throw ConfigError("expand_polynomial requires polynomial radial profiles");
    for (std::size_t j = 0; j < poly->size(); ++j) {
      const double aj = (*poly)[j];
      if (aj == 0.0) continue;
      for (const auto& e : degree_shell(f.dim(), static_cast<int>(j))) {
        // multinomial j! / prod e_i!
        double mult = 1.0;
        int remaining = static_cast<int>(j);
        for (int ei : e.entries()) {
          mult *= binomial(remaining, ei);
          remaining -= ei;
        }
        out[{t.p + e, t.q + e}] += t.coeff * aj * mult;
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
  return out;
}

SymbolZeroCertificate certify_zero(const SymbolExpr& f, double tolerance) {
  SymbolZeroCertificate cert;
  cert.tolerance = tolerance;
  if (f.is_polynomial()) {
    const auto coeffs = expand_polynomial(f);
    const bool all_small = std::all_of(coeffs.begin(), coeffs.end(),
                                       [&](const auto& kv) { return std::abs(kv.second) <= tolerance; });
    if (all_small) return cert;
  }

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = f.dim();
  double best = -1.0;
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int sample = 0; sample < 4096; ++sample) {
    double norm = 0.0;
    for (auto& zi : z) {
      zi = Complex(gauss(rng), gauss(rng));
      norm += std::norm(zi);
    }
    const double radius = 0.999 * std::pow(unif(rng), 1.0 / (2.0 * n)) / std::sqrt(norm);
    for (auto& zi : z) zi *= radius;
    const Complex v = eval_symbol(f, z);
    if (std::abs(v) > best) {
      best = std::abs(v);
      cert.point = z;
      cert.value = v;
    }
  }
  if (best > tolerance) {
    cert.verdict = SymbolZeroCertificate::Verdict::NonzeroWitness;
  } else {
    cert.point.clear();
    cert.value = 0.0;
  }
  return cert;
}

}  // namespace bergman

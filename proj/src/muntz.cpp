#include "bergman/muntz.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <set>

#include "bergman/errors.hpp"

namespace bergman {

IntegerSetDesc IntegerSetDesc::finite(std::vector<long long> elements) {
  for (long long e : elements) {
    if (e < 0) throw ConfigError("finite set elements must be non-negative");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return IntegerSetDesc(Finite{std::move(elements)});
}

IntegerSetDesc IntegerSetDesc::arithmetic(long long start, long long step) {
  if (start < 0) throw ConfigError("arithmetic start must be non-negative");
  if (step < 1) throw ConfigError("arithmetic step must be >= 1");
  return IntegerSetDesc(Arithmetic{start, step});
}

IntegerSetDesc IntegerSetDesc::geometric(long long base, long long start_exponent) {
  if (base < 2) throw ConfigError("geometric base must be >= 2");
  if (start_exponent < 0) throw ConfigError("geometric start exponent must be non-negative");
  return IntegerSetDesc(Geometric{base, start_exponent});
}

IntegerSetDesc IntegerSetDesc::set_union(std::vector<IntegerSetDesc> parts) {
  return IntegerSetDesc(Union{std::move(parts)});
}

IntegerSetDesc IntegerSetDesc::complement(IntegerSetDesc inner) {
  return IntegerSetDesc(Complement{std::make_shared<const IntegerSetDesc>(std::move(inner))});
}

IntegerSetDesc IntegerSetDesc::shifted(IntegerSetDesc inner, long long offset) {
  return IntegerSetDesc(Shifted{std::make_shared<const IntegerSetDesc>(std::move(inner)), offset});
}

bool IntegerSetDesc::contains(long long s) const {
  if (s < 0) return false;
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return std::binary_search(v.elements.begin(), v.elements.end(), s);
        } else if constexpr (std::is_same_v<T, Arithmetic>) {
          return s >= v.start && (s - v.start) % v.step == 0;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          long long power = 1;
          for (long long e = 0;; ++e) {
            if (power == s) return e >= v.start_exponent;
            if (power > s / v.base) return false;
            power *= v.base;
          }
        } else if constexpr (std::is_same_v<T, Union>) {
          return std::any_of(v.parts.begin(), v.parts.end(), [&](const IntegerSetDesc& p) { return p.contains(s); });
        } else if constexpr (std::is_same_v<T, Complement>) {
          return !v.inner->contains(s);
        } else {
          if (v.offset > 0 && s < v.offset) return false;
          return v.inner->contains(s - v.offset);
        }
      },
      node_);
}

std::vector<long long> IntegerSetDesc::elements_up_to(long long limit) const {
  std::vector<long long> out;
  for (long long s = 0; s <= limit; ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

bool IntegerSetDesc::operator==(const IntegerSetDesc& other) const {
  if (node_.index() != other.node_.index()) return false;
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        const auto& w = std::get<T>(other.node_);
        if constexpr (std::is_same_v<T, Finite>) {
          return v.elements == w.elements;
        } else if constexpr (std::is_same_v<T, Arithmetic>) {
          return v.start == w.start && v.step == w.step;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return v.base == w.base && v.start_exponent == w.start_exponent;
        } else if constexpr (std::is_same_v<T, Union>) {
          return v.parts == w.parts;
        } else if constexpr (std::is_same_v<T, Complement>) {
          return *v.inner == *w.inner;
        } else {
          return v.offset == w.offset && *v.inner == *w.inner;
        }
      },
      node_);
}

const char* to_string(SumClass c) { return c == SumClass::Converges ? "Converges" : "Diverges"; }

namespace {

bool is_finite_set(const IntegerSetDesc& s) {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntegerSetDesc::Finite>) {
          return true;
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Union>) {
          return std::all_of(v.parts.begin(), v.parts.end(), is_finite_set);
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Shifted>) {
          return is_finite_set(*v.inner);
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Complement>) {
          if (const auto* a = std::get_if<IntegerSetDesc::Arithmetic>(&v.inner->node())) return a->step == 1;
          if (const auto* c = std::get_if<IntegerSetDesc::Complement>(&v.inner->node())) return is_finite_set(*c->inner);
          return false;
        } else {
          return false;
        }
      },
      s.node());
}

SumClass complement_class(const IntegerSetDesc& inner);

SumClass classify(const IntegerSetDesc& s) {
  return std::visit(
      [&](const auto& v) -> SumClass {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntegerSetDesc::Finite> || std::is_same_v<T, IntegerSetDesc::Geometric>) {
          return SumClass::Converges;
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Arithmetic>) {
          return SumClass::Diverges;
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Union>) {
          bool diverges = false;
          for (const auto& p : v.parts) diverges = (classify(p) == SumClass::Diverges) || diverges;
          return diverges ? SumClass::Diverges : SumClass::Converges;
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Shifted>) {
          return classify(*v.inner);
        } else {
          return complement_class(*v.inner);
        }
      },
      s.node());
}

SumClass complement_class(const IntegerSetDesc& inner) {
  if (is_finite_set(inner)) return SumClass::Diverges;
  return std::visit(
      [&](const auto& v) -> SumClass {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IntegerSetDesc::Arithmetic>) {
          return v.step == 1 ? SumClass::Converges : SumClass::Diverges;
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Complement>) {
          return classify(*v.inner);
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Shifted>) {
          return complement_class(*v.inner);
        } else if constexpr (std::is_same_v<T, IntegerSetDesc::Union>) {
          // Intersection of the parts' complements. Complements of finite
          // parts are cofinite and do not change the class.
          std::vector<const IntegerSetDesc*> infinite_parts;
          for (const auto& p : v.parts) {
            if (!is_finite_set(p)) infinite_parts.push_back(&p);
          }
          std::optional<SumClass> single;
          for (const auto* p : infinite_parts) {
            try {
              const auto c = complement_class(*p);
              if (c == SumClass::Converges) return SumClass::Converges;
              single = c;
            } catch (const UnknownClass&) {
              single.reset();
            }
          }
          if (infinite_parts.empty()) return SumClass::Diverges;
          if (infinite_parts.size() == 1 && single) return *single;
          throw UnknownClass("complement of a union with several infinite parts is not classifiable");
        } else {
          // Finite and Geometric inner sets converge, so their complements diverge.
          if (classify(inner) == SumClass::Converges) return SumClass::Diverges;
          throw UnknownClass("complement is not classifiable");
        }
      },
      inner.node());
}

}  // namespace

SumClass reciprocal_sum_class(const IntegerSetDesc& s) { return classify(s); }

// ---------------------------------------------------------------------------

namespace {

constexpr double kGramConditionLimit = 1e35;

std::vector<double> checked_exponents(double lambda, std::span<const double> exponents) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("muntz_distance: lambda must be finite and > 0");
  std::vector<double> out(exponents.begin(), exponents.end());
  for (double mu : out) {
    if (!(mu > -0.5) || !std::isfinite(mu)) throw ConfigError("muntz_distance: exponents must be finite and > -1/2");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

double muntz_distance_closed_form(double lambda, std::span<const double> exponents) {
  const auto exps = checked_exponents(lambda, exponents);
  double d = 1.0 / std::sqrt(2.0 * lambda + 1.0);
  for (double mu : exps) d *= std::abs(lambda - mu) / (lambda + mu + 1.0);
  return d;
}

double muntz_distance_gram(double lambda, std::span<const double> exponents) {
  const auto exps = checked_exponents(lambda, exponents);
  if (std::find(exps.begin(), exps.end(), lambda) != exps.end()) return 0.0;

  // Gram matrices of nearby exponents are Cauchy-like and badly conditioned;
  // 50 significant digits leave ample room below the 1e-10 agreement target.
  using Real = boost::multiprecision::cpp_bin_float_50;
  const std::size_t k = exps.size();
  std::vector<Real> all(exps.begin(), exps.end());
  all.emplace_back(lambda);

  std::vector<std::vector<Real>> a(k + 1, std::vector<Real>(k + 1));
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j <= k; ++j) a[i][j] = Real(1) / (all[i] + all[j] + Real(1));
  }

  // Right-looking Cholesky; the final pivot is the squared distance.
  Real max_pivot = 0;
  Real min_pivot = 0;
  for (std::size_t c = 0; c <= k; ++c) {
    const Real pivot = a[c][c];
    if (c < k) {
      if (!(pivot > 0)) throw IllConditioned("muntz_distance: Gram matrix not numerically positive definite");
      max_pivot = c == 0 ? pivot : std::max(max_pivot, pivot);
      min_pivot = c == 0 ? pivot : std::min(min_pivot, pivot);
    }
    for (std::size_t i = c + 1; i <= k; ++i) {
      const Real factor = a[i][c] / pivot;
      for (std::size_t j = c + 1; j <= k; ++j) a[i][j] -= factor * a[c][j];
    }
  }
  if (k > 0 && max_pivot / min_pivot > Real(kGramConditionLimit)) {
    throw IllConditioned("muntz_distance: Gram matrix pivot ratio exceeds 1e35");
  }
  const Real d2 = a[k][k];
  if (d2 < 0) throw IllConditioned("muntz_distance: negative Schur complement");
  return static_cast<double>(sqrt(d2));
}

MuntzDistance muntz_distance(double lambda, std::span<const double> exponents) {
  MuntzDistance out;
  out.closed_form = muntz_distance_closed_form(lambda, exponents);
  out.gram = muntz_distance_gram(lambda, exponents);
  out.discrepancy = std::abs(out.closed_form - out.gram);
  return out;
}

// ---------------------------------------------------------------------------

PairSetDesc PairSetDesc::diagonal_band(long long j_min, long long j_max, std::map<long long, IntegerSetDesc> diagonals,
                                       Tail tail) {
  if (j_min > j_max) throw ConfigError("diagonal band requires j_min <= j_max");
  for (const auto& [j, desc] : diagonals) {
    if (j < j_min || j > j_max) throw ConfigError("diagonal " + std::to_string(j) + " lies outside the band");
  }
  return PairSetDesc(DiagonalBand{j_min, j_max, std::move(diagonals), tail});
}

PairSetDesc PairSetDesc::explicit_list(std::vector<std::pair<long long, long long>> pairs) {
  for (const auto& [s, t] : pairs) {
    if (s < 0 || t < 0) throw ConfigError("pair entries must be non-negative");
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return PairSetDesc(ExplicitList{std::move(pairs)});
}

bool PairSetDesc::contains(long long s, long long t) const {
  if (s < 0 || t < 0) return false;
  return trent_Mj(*this, t - s).contains(s);
}

PairSetDesc::Tail PairSetDesc::tail() const {
  if (std::holds_alternative<FullGrid>(node_)) return Tail::Full;
  if (const auto* b = std::get_if<DiagonalBand>(&node_)) return b->tail;
  return Tail::Empty;
}

std::pair<long long, long long> PairSetDesc::band() const {
  if (const auto* b = std::get_if<DiagonalBand>(&node_)) return {b->j_min, b->j_max};
  if (const auto* e = std::get_if<ExplicitList>(&node_)) {
    if (e->pairs.empty()) return {1, 0};
    long long lo = std::numeric_limits<long long>::max();
    long long hi = std::numeric_limits<long long>::min();
    for (const auto& [s, t] : e->pairs) {
      lo = std::min(lo, t - s);
      hi = std::max(hi, t - s);
    }
    return {lo, hi};
  }
  return {1, 0};
}

IntegerSetDesc trent_Mj(const PairSetDesc& m, long long j) {
  auto tail_set = [&](PairSetDesc::Tail tail) {
    return tail == PairSetDesc::Tail::Full ? IntegerSetDesc::arithmetic(std::max(0LL, -j), 1) : IntegerSetDesc::empty();
  };
  return std::visit(
      [&](const auto& v) -> IntegerSetDesc {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PairSetDesc::FullGrid>) {
          return tail_set(PairSetDesc::Tail::Full);
        } else if constexpr (std::is_same_v<T, PairSetDesc::DiagonalBand>) {
          if (j < v.j_min || j > v.j_max) return tail_set(v.tail);
          auto it = v.diagonals.find(j);
          return it == v.diagonals.end() ? IntegerSetDesc::empty() : it->second;
        } else {
          std::vector<long long> s;
          for (const auto& [a, b] : v.pairs) {
            if (b - a == j) s.push_back(a);
          }
          return IntegerSetDesc::finite(std::move(s));
        }
      },
      m.node());
}

TrentVerdict trent_density_verdict(const PairSetDesc& m, long long j_lo, long long j_hi) {
  if (j_lo > j_hi) throw ConfigError("j range must satisfy lo <= hi");
  if (j_hi - j_lo > 1'000'000) throw ConfigError("j range too wide (limit 10^6 diagonals)");
  const auto [band_lo, band_hi] = m.band();
  const bool has_band = band_lo <= band_hi;

  std::set<long long> js;
  for (long long j = j_lo; j <= j_hi; ++j) js.insert(j);
  if (has_band) {
    for (long long j = band_lo; j <= band_hi; ++j) js.insert(j);
  }
  js.insert(std::min(j_lo, has_band ? band_lo : j_lo) - 1);
  js.insert(std::max(j_hi, has_band ? band_hi : j_hi) + 1);

  std::vector<long long> order(js.begin(), js.end());
  std::stable_sort(order.begin(), order.end(), [](long long a, long long b) {
    const auto aa = a < 0 ? -a : a;
    const auto bb = b < 0 ? -b : b;
    if (aa != bb) return aa < bb;
    return a > b;
  });

  TrentVerdict out;
  for (long long j : order) {
    DiagonalVerdict dv;
    dv.j = j;
    dv.from_tail = !has_band || j < band_lo || j > band_hi;
    try {
      dv.sum_class = reciprocal_sum_class(trent_Mj(m, j));
    } catch (const UnknownClass& e) {
      throw UnknownClass(std::string(e.what()) + " (diagonal j=" + std::to_string(j) + ")");
    }
    if (dv.sum_class == SumClass::Converges && out.dense) {
      out.dense = false;
      out.witness = j;
    }
    out.per_diagonal.push_back(dv);
  }
  return out;
}

}  // namespace bergman

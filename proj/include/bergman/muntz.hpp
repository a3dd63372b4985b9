#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bergman {

/// Symbolic description of a subset of N = {0, 1, 2, ...}.
class IntegerSetDesc {
 public:
  struct Finite {
    std::vector<long long> elements;  // sorted, unique, >= 0
  };
  /// {start, start + step, ...}; step >= 1.
  struct Arithmetic {
    long long start = 0;
    long long step = 1;
  };
  /// {base^e : e >= start_exponent}; base >= 2.
  struct Geometric {
    long long base = 2;
    long long start_exponent = 0;
  };
  struct Union {
    std::vector<IntegerSetDesc> parts;
  };
  /// N minus the inner set.
  struct Complement {
    std::shared_ptr<const IntegerSetDesc> inner;
  };
  /// {s + offset : s in inner} intersected with N.
  struct Shifted {
    std::shared_ptr<const IntegerSetDesc> inner;
    long long offset = 0;
  };
  using Node = std::variant<Finite, Arithmetic, Geometric, Union, Complement, Shifted>;

  static IntegerSetDesc finite(std::vector<long long> elements);
  static IntegerSetDesc empty() { return finite({}); }
  static IntegerSetDesc arithmetic(long long start, long long step);
  static IntegerSetDesc all_naturals() { return arithmetic(0, 1); }
  static IntegerSetDesc geometric(long long base, long long start_exponent = 0);
  static IntegerSetDesc set_union(std::vector<IntegerSetDesc> parts);
  static IntegerSetDesc complement(IntegerSetDesc inner);
  static IntegerSetDesc shifted(IntegerSetDesc inner, long long offset);

  const Node& node() const noexcept { return node_; }
  bool contains(long long s) const;
  /// Elements <= limit, ascending.
  std::vector<long long> elements_up_to(long long limit) const;

  bool operator==(const IntegerSetDesc& other) const;

 private:
  explicit IntegerSetDesc(Node node) : node_(std::move(node)) {}
  Node node_;
};

enum class SumClass { Converges, Diverges };

const char* to_string(SumClass c);

/// Classifies sum_{s in S, s != 0} 1/s symbolically. Throws UnknownClass
/// when the rules below cannot decide:
///  - Finite, Geometric converge; Arithmetic diverges.
///  - Union diverges iff some part diverges.
///  - Shifted preserves the class.
///  - Complement of a convergent set diverges; a double complement has the
///    inner class; complement of Arithmetic(start, 1) is finite; complement
///    of Arithmetic(start, step >= 2) diverges; a complement of a union is
///    the intersection of complements: convergent if one factor converges,
///    otherwise the class of the single non-cofinite factor.
SumClass reciprocal_sum_class(const IntegerSetDesc& s);

struct MuntzDistance {
  double closed_form = 0.0;
  double gram = 0.0;
  double discrepancy = 0.0;
};

/// dist_{L^2[0,1]}(t^lambda, span{t^mu : mu in exponents}) via
/// (2 lambda + 1)^{-1/2} prod |lambda - mu| / (lambda + mu + 1).
double muntz_distance_closed_form(double lambda, std::span<const double> exponents);

/// Same distance from the Gram matrix <t^a, t^b> = 1/(a+b+1): the last
/// Cholesky pivot of the augmented Gram matrix, in 50-digit arithmetic.
/// Throws IllConditioned when the pivot ratio of the exponent Gram matrix
/// exceeds 1e35.
double muntz_distance_gram(double lambda, std::span<const double> exponents);

/// Both evaluation routes. lambda in exponents short-circuits to 0; throws
/// ConfigError unless lambda > 0 and every exponent > -1/2.
MuntzDistance muntz_distance(double lambda, std::span<const double> exponents);

/// M subset of N x N, queried one diagonal M_j = {s : (s, s+j) in M} at a time.
class PairSetDesc {
 public:
  enum class Tail { Full, Empty };

  struct FullGrid {};
  /// Diagonals j_min..j_max described per j (missing j inside the band are
  /// empty); diagonals outside the band follow `tail`.
  struct DiagonalBand {
    long long j_min = 0;
    long long j_max = 0;
    std::map<long long, IntegerSetDesc> diagonals;
    Tail tail = Tail::Empty;
  };
  struct ExplicitList {
    std::vector<std::pair<long long, long long>> pairs;
  };
  using Node = std::variant<FullGrid, DiagonalBand, ExplicitList>;

  static PairSetDesc full_grid() { return PairSetDesc(FullGrid{}); }
  static PairSetDesc diagonal_band(long long j_min, long long j_max, std::map<long long, IntegerSetDesc> diagonals,
                                   Tail tail);
  static PairSetDesc explicit_list(std::vector<std::pair<long long, long long>> pairs);

  const Node& node() const noexcept { return node_; }
  bool contains(long long s, long long t) const;

  /// Convention for diagonals beyond the described band.
  Tail tail() const;
  /// Inclusive range of diagonals described explicitly.
  std::pair<long long, long long> band() const;

 private:
  explicit PairSetDesc(Node node) : node_(std::move(node)) {}
  Node node_;
};

/// M_j = {s in N : (s, s+j) in M}. The constant function in the generating
/// family corresponds to s = 0, which never enters a reciprocal sum.
IntegerSetDesc trent_Mj(const PairSetDesc& m, long long j);

struct DiagonalVerdict {
  long long j = 0;
  SumClass sum_class = SumClass::Converges;
  bool from_tail = false;
};

struct TrentVerdict {
  bool dense = true;
  std::optional<long long> witness;
  std::vector<DiagonalVerdict> per_diagonal;
};

/// Dense iff every diagonal's reciprocal sum diverges. Queried diagonals are
/// j_lo..j_hi scanned in the order 0, 1, -1, 2, -2, ...; the declared tail is
/// then represented by one diagonal just past each side of the band, which
/// fixes the verdict for all remaining j. The witness is the first failing
/// diagonal in that order. UnknownClass propagates with the offending j.
TrentVerdict trent_density_verdict(const PairSetDesc& m, long long j_lo, long long j_hi);

}  // namespace bergman

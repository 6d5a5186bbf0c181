#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "voltlift/errors.hpp"

namespace voltlift {

/// Exact arbitrary-precision integer. Hermite pivots can grow past machine
/// words, so all lattice algebra runs over these.
using Int = mpz_class;
using IntVector = std::vector<Int>;
using IntMatrix = std::vector<IntVector>;

/// A finitely generated abelian group in standard form
/// Z^rank  (+)  Z/d_1 (+) ... (+) Z/d_k, with every d_j >= 2.
class GroupSpec {
 public:
  GroupSpec(int rank, std::vector<Int> moduli);

  int rank() const { return rank_; }
  const std::vector<Int>& moduli() const { return moduli_; }

  /// Coordinate count of an element vector: rank + |moduli|. Free
  /// coordinates come first, torsion coordinates follow in moduli order.
  std::size_t dimension() const { return moduli_.size() + rank_; }

  bool isFinite() const { return rank_ == 0; }
  /// Group order; throws InfiniteGroupError when rank > 0.
  Int order() const;

  bool operator==(const GroupSpec& other) const = default;

 private:
  int rank_;
  std::vector<Int> moduli_;
};

/// An element of a GroupSpec: an integer coordinate vector with torsion
/// coordinates reduced into [0, d_j).
class GroupElement {
 public:
  GroupElement(GroupSpec spec, IntVector coords);

  static GroupElement zero(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  const IntVector& coords() const { return coords_; }
  bool isZero() const;

  /// Canonical "c1,c2,..." form, used for derived-graph identifiers.
  std::string key() const;

  bool operator==(const GroupElement& other) const = default;
  bool operator<(const GroupElement& other) const;

 private:
  GroupSpec spec_;
  IntVector coords_;
};

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement zero(const GroupSpec& spec);

inline GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  return add(a, b);
}
inline GroupElement operator-(const GroupElement& a) { return neg(a); }
inline GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  return add(a, neg(b));
}

/// Integer row lattice in canonical row-style Hermite normal form: pivots
/// positive, entries above each pivot reduced into [0, pivot). Canonicity
/// makes lattice equality a row-wise basis comparison.
class IntegerLattice {
 public:
  static IntegerLattice fromRows(std::size_t ambientDim, IntMatrix rows);

  std::size_t ambientDim() const { return ambientDim_; }
  const IntMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }

  /// Lattice membership by back-substitution along the HNF pivots.
  bool contains(const IntVector& x) const;

  bool operator==(const IntegerLattice& other) const = default;

 private:
  IntegerLattice(std::size_t ambientDim, IntMatrix basis)
      : ambientDim_(ambientDim), basis_(std::move(basis)) {}

  std::size_t ambientDim_;
  IntMatrix basis_;
};

/// Row-style Hermite normal form of the lattice spanned by `rows`. The
/// ambient dimension is taken from the rows; the empty matrix yields the
/// zero lattice in dimension 0.
IntegerLattice hermiteNormalForm(const IntMatrix& rows);
IntegerLattice hermiteNormalForm(std::size_t ambientDim, const IntMatrix& rows);

/// Basis of { x : x * rows = 0 }, the left kernel of the row matrix.
IntMatrix kernelBasis(std::size_t ambientDim, const IntMatrix& rows);

/// Relation lattice of a generator tuple: the HNF basis of
/// { x in Z^m : sum_i x_i g_i = 0 in the group }. All generators must share
/// a spec; torsion is handled by augmenting with the rows d_j * unit.
IntegerLattice relationLattice(const std::vector<GroupElement>& gens);

/// True iff g_i -> h_i extends to a group isomorphism <gs> -> <hs>, which
/// holds exactly when the two relation lattices coincide. The two tuples may
/// live in different ambient groups but must have equal length.
bool generatorMapExtendsToIso(const std::vector<GroupElement>& gs,
                              const std::vector<GroupElement>& hs);

/// Generators of <a> intersect <b>, via lattice intersection of the
/// coordinate preimage lattices. Zero generators are dropped.
std::vector<GroupElement> subgroupIntersection(
    const std::vector<GroupElement>& a, const std::vector<GroupElement>& b);

/// Membership of x in the subgroup generated by gens.
bool isMember(const GroupElement& x, const std::vector<GroupElement>& gens);

/// Index of <gens> in the full group; std::nullopt means infinite.
std::optional<Int> subgroupIndex(const std::vector<GroupElement>& gens,
                                 const GroupSpec& spec);

/// All elements of <gens>, sorted lexicographically by coordinates.
/// Throws InfiniteGroupError when some generator has infinite order.
std::vector<GroupElement> enumerateSubgroup(
    const GroupSpec& spec, const std::vector<GroupElement>& gens);

/// All elements of a finite full group, sorted lexicographically.
std::vector<GroupElement> enumerateFullGroup(const GroupSpec& spec);

}  // namespace voltlift

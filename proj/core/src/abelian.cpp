#include "voltlift/abelian.hpp"

#include <algorithm>
#include <set>

namespace voltlift {

namespace {

Int floorDiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floorMod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void requireSameSpec(const GroupElement& a, const GroupElement& b) {
  if (!(a.spec() == b.spec()))
    throw SpecMismatchError("group elements have different specs");
}

void requireSharedSpec(const std::vector<GroupElement>& gens) {
  for (std::size_t i = 1; i < gens.size(); ++i)
    requireSameSpec(gens[0], gens[i]);
}

/// Rows of the coordinate preimage lattice of <gens> in Z^dim: the generator
/// vectors plus the torsion relations d_j * e_j.
IntMatrix preimageRows(const GroupSpec& spec,
                       const std::vector<GroupElement>& gens) {
  const std::size_t dim = spec.dimension();
  IntMatrix rows;
  rows.reserve(gens.size() + spec.moduli().size());
  for (const GroupElement& g : gens) rows.push_back(g.coords());
  for (std::size_t j = 0; j < spec.moduli().size(); ++j) {
    IntVector r(dim, 0);
    r[spec.rank() + j] = spec.moduli()[j];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

GroupSpec::GroupSpec(int rank, std::vector<Int> moduli)
    : rank_(rank), moduli_(std::move(moduli)) {
  if (rank_ < 0) throw ValidationError("group rank must be nonnegative");
  for (const Int& d : moduli_)
    if (d < 2) throw ValidationError("torsion moduli must be >= 2");
}

Int GroupSpec::order() const {
  if (rank_ > 0) throw InfiniteGroupError("group has a free part");
  Int n = 1;
  for (const Int& d : moduli_) n *= d;
  return n;
}

GroupElement::GroupElement(GroupSpec spec, IntVector coords)
    : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (coords_.size() != spec_.dimension())
    throw ValidationError("element coordinate count does not match spec");
  for (std::size_t j = 0; j < spec_.moduli().size(); ++j) {
    Int& c = coords_[spec_.rank() + j];
    c = floorMod(c, spec_.moduli()[j]);
  }
}

GroupElement GroupElement::zero(const GroupSpec& spec) {
  return GroupElement(spec, IntVector(spec.dimension(), 0));
}

bool GroupElement::isZero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Int& c) { return c == 0; });
}

std::string GroupElement::key() const {
  std::string s;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += coords_[i].get_str();
  }
  return s;
}

bool GroupElement::operator<(const GroupElement& other) const {
  return coords_ < other.coords_;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
  requireSameSpec(a, b);
  IntVector c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = a.coords()[i] + b.coords()[i];
  return GroupElement(a.spec(), std::move(c));
}

GroupElement neg(const GroupElement& a) {
  IntVector c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords()[i];
  return GroupElement(a.spec(), std::move(c));
}

GroupElement zero(const GroupSpec& spec) { return GroupElement::zero(spec); }

namespace {

/// In-place row HNF over columns [0, pivotCols); rows may be longer (the
/// extra columns carry transformation bookkeeping for kernel extraction).
/// Returns the number of pivot rows.
std::size_t rowEchelonHnf(IntMatrix& rows, std::size_t pivotCols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivotCols && r < rows.size(); ++c) {
    // Euclidean reduction: shrink column entries below row r until at most
    // one nonzero remains.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() ||
            cmp(abs(rows[i][c]), abs(rows[best][c])) < 0)
          best = i;
      }
      if (best == rows.size()) break;  // column all zero below r
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = floorDiv(rows[i][c], rows[r][c]);
        for (std::size_t k = 0; k < rows[i].size(); ++k)
          rows[i][k] -= q * rows[r][k];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (Int& x : rows[r]) x = -x;
    // Reduce the entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][c] == 0) continue;
      Int q = floorDiv(rows[i][c], rows[r][c]);
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        rows[i][k] -= q * rows[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

IntegerLattice IntegerLattice::fromRows(std::size_t ambientDim,
                                        IntMatrix rows) {
  for (const IntVector& row : rows)
    if (row.size() != ambientDim)
      throw ValidationError("lattice row has wrong dimension");
  std::size_t r = rowEchelonHnf(rows, ambientDim);
  rows.resize(r);
  return IntegerLattice(ambientDim, std::move(rows));
}

bool IntegerLattice::contains(const IntVector& x) const {
  if (x.size() != ambientDim_)
    throw ValidationError("vector dimension does not match lattice");
  IntVector v = x;
  std::size_t col = 0;
  for (const IntVector& row : basis_) {
    std::size_t c = col;
    while (c < ambientDim_ && row[c] == 0) ++c;
    for (std::size_t k = col; k < c; ++k)
      if (v[k] != 0) return false;
    if (c == ambientDim_) break;
    if (floorMod(v[c], row[c]) != 0) return false;
    Int q = v[c] / row[c];
    for (std::size_t k = c; k < ambientDim_; ++k) v[k] -= q * row[k];
    col = c + 1;
  }
  for (std::size_t k = col; k < ambientDim_; ++k)
    if (v[k] != 0) return false;
  return true;
}

IntegerLattice hermiteNormalForm(const IntMatrix& rows) {
  std::size_t dim = rows.empty() ? 0 : rows.front().size();
  return IntegerLattice::fromRows(dim, rows);
}

IntegerLattice hermiteNormalForm(std::size_t ambientDim,
                                 const IntMatrix& rows) {
  return IntegerLattice::fromRows(ambientDim, rows);
}

IntMatrix kernelBasis(std::size_t ambientDim, const IntMatrix& rows) {
  const std::size_t m = rows.size();
  IntMatrix work(m, IntVector(ambientDim + m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != ambientDim)
      throw ValidationError("kernel row has wrong dimension");
    for (std::size_t c = 0; c < ambientDim; ++c) work[i][c] = rows[i][c];
    work[i][ambientDim + i] = 1;
  }
  rowEchelonHnf(work, ambientDim);
  IntMatrix kernel;
  for (const IntVector& row : work) {
    bool zeroPart = true;
    for (std::size_t c = 0; c < ambientDim; ++c)
      if (row[c] != 0) {
        zeroPart = false;
        break;
      }
    if (!zeroPart) continue;
    kernel.emplace_back(row.begin() + static_cast<long>(ambientDim),
                        row.end());
  }
  return kernel;
}

IntegerLattice relationLattice(const std::vector<GroupElement>& gens) {
  requireSharedSpec(gens);
  const std::size_t m = gens.size();
  if (m == 0) return IntegerLattice::fromRows(0, {});
  const GroupSpec& spec = gens.front().spec();
  const std::size_t dim = spec.dimension();

  // Kernel of Z^(m+k) -> Z^dim over generator rows plus torsion rows,
  // projected onto the first m coordinates.
  IntMatrix rows = preimageRows(spec, gens);
  // preimageRows puts the m generator rows first, then k torsion rows.
  IntMatrix kernel = kernelBasis(dim, rows);
  IntMatrix projected;
  projected.reserve(kernel.size());
  for (const IntVector& v : kernel)
    projected.emplace_back(v.begin(), v.begin() + static_cast<long>(m));
  return IntegerLattice::fromRows(m, std::move(projected));
}

bool generatorMapExtendsToIso(const std::vector<GroupElement>& gs,
                              const std::vector<GroupElement>& hs) {
  if (gs.size() != hs.size())
    throw LengthMismatchError("generator tuples have different lengths");
  return relationLattice(gs) == relationLattice(hs);
}

std::vector<GroupElement> subgroupIntersection(
    const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  if (a.empty() && b.empty()) return {};
  const GroupSpec& spec = a.empty() ? b.front().spec() : a.front().spec();
  requireSharedSpec(a);
  requireSharedSpec(b);
  if (!a.empty() && !b.empty()) requireSameSpec(a.front(), b.front());

  const std::size_t dim = spec.dimension();
  IntMatrix arows = hermiteNormalForm(dim, preimageRows(spec, a)).basis();
  IntMatrix brows = hermiteNormalForm(dim, preimageRows(spec, b)).basis();

  // x in A cap B  <=>  x = uA = vB; the pairs (u, v) with uA - vB = 0 form
  // the left kernel of the stacked matrix [A; -B].
  IntMatrix stacked = arows;
  for (const IntVector& row : brows) {
    IntVector negRow(dim);
    for (std::size_t c = 0; c < dim; ++c) negRow[c] = -row[c];
    stacked.push_back(std::move(negRow));
  }
  IntMatrix kernel = kernelBasis(dim, stacked);

  IntMatrix meet;
  for (const IntVector& uv : kernel) {
    IntVector x(dim, 0);
    for (std::size_t i = 0; i < arows.size(); ++i)
      for (std::size_t c = 0; c < dim; ++c) x[c] += uv[i] * arows[i][c];
    meet.push_back(std::move(x));
  }
  IntegerLattice lat = IntegerLattice::fromRows(dim, std::move(meet));

  std::vector<GroupElement> gens;
  for (const IntVector& row : lat.basis()) {
    GroupElement g(spec, row);
    if (!g.isZero()) gens.push_back(std::move(g));
  }
  return gens;
}

bool isMember(const GroupElement& x, const std::vector<GroupElement>& gens) {
  requireSharedSpec(gens);
  if (!gens.empty()) requireSameSpec(x, gens.front());
  const GroupSpec& spec = x.spec();
  IntegerLattice lat =
      hermiteNormalForm(spec.dimension(), preimageRows(spec, gens));
  return lat.contains(x.coords());
}

std::optional<Int> subgroupIndex(const std::vector<GroupElement>& gens,
                                 const GroupSpec& spec) {
  requireSharedSpec(gens);
  if (!gens.empty() && !(gens.front().spec() == spec))
    throw SpecMismatchError("generators do not live in the given spec");
  IntegerLattice lat =
      hermiteNormalForm(spec.dimension(), preimageRows(spec, gens));
  if (lat.rank() < spec.dimension()) return std::nullopt;
  Int det = 1;
  for (std::size_t i = 0; i < lat.basis().size(); ++i)
    det *= lat.basis()[i][i];
  return det;
}

std::vector<GroupElement> enumerateSubgroup(
    const GroupSpec& spec, const std::vector<GroupElement>& gens) {
  requireSharedSpec(gens);
  if (!gens.empty() && !(gens.front().spec() == spec))
    throw SpecMismatchError("generators do not live in the given spec");
  for (const GroupElement& g : gens)
    for (int i = 0; i < spec.rank(); ++i)
      if (g.coords()[i] != 0)
        throw InfiniteGroupError("subgroup has an element of infinite order");

  std::set<GroupElement> seen;
  std::vector<GroupElement> frontier{GroupElement::zero(spec)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& x : frontier) {
      for (const GroupElement& g : gens) {
        for (const GroupElement& y : {add(x, g), add(x, neg(g))}) {
          if (seen.insert(y).second) next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<GroupElement> enumerateFullGroup(const GroupSpec& spec) {
  if (!spec.isFinite())
    throw InfiniteGroupError("cannot enumerate a group with a free part");
  std::vector<GroupElement> all;
  IntVector coords(spec.dimension(), 0);
  while (true) {
    all.emplace_back(spec, coords);
    std::size_t j = 0;
    for (; j < spec.moduli().size(); ++j) {
      std::size_t pos = spec.moduli().size() - 1 - j;
      coords[pos] += 1;
      if (coords[pos] < spec.moduli()[pos]) break;
      coords[pos] = 0;
    }
    if (j == spec.moduli().size()) break;
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace voltlift

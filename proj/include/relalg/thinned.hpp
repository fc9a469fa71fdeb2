#ifndef RELALG_THINNED_HPP
#define RELALG_THINNED_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/families.hpp"

namespace relalg {

  using Index = std::uint32_t;

  // T(i, j, k): (i <= j = k) or (j <= k = i) or (k <= i = j).
  constexpr bool thinning_T(Index i, Index j, Index k) noexcept {
    return (i <= j && j == k) || (j <= k && k == i) || (k <= i && i == j);
  }

  // A subset of the natural numbers of the form F u [t, inf) with F finite.
  // Canonical: every member of F is below t, and t-1 is not in F.
  class IndexSet {
   public:
    IndexSet() = default;

    static IndexSet all() { return from(0); }
    static IndexSet from(Index t) {
      IndexSet s;
      s._tail = t;
      return s;
    }
    static IndexSet single(Index i) {
      IndexSet s;
      s._finite.push_back(i);
      return s;
    }
    // {0, ..., k}
    static IndexSet upto(Index k);

    bool empty() const noexcept { return _finite.empty() && !_tail; }
    bool infinite() const noexcept { return _tail.has_value(); }
    std::optional<Index> const& tail() const noexcept { return _tail; }
    std::vector<Index> const&   finite() const noexcept { return _finite; }

    bool contains(Index i) const noexcept;
    // Least member; requires !empty().
    Index min() const;
    // Greatest member; requires a nonempty finite set.
    Index max() const;

    IndexSet unite(IndexSet const& other) const;
    IndexSet intersect(IndexSet const& other) const;
    // Members strictly greater than m.
    IndexSet above(Index m) const;
    bool     is_subset_of(IndexSet const& other) const {
      return intersect(other) == *this;
    }

    friend bool operator==(IndexSet const&, IndexSet const&) = default;

   private:
    void     normalize();

    std::vector<Index>   _finite;
    std::optional<Index> _tail;
  };

  class ThinnedSpec;

  // An element of the atom-generated part of C_E(A): optionally 1', plus for
  // each diversity atom x of A the set of indices i with x^(i) below it.
  // Tails J(x, t) are the infinite parts, sporadic atoms the finite ones.
  class TailedElement {
   public:
    TailedElement() = default;
    TailedElement(std::uint64_t spec, std::size_t width)
        : _spec(spec), _parts(width) {}

    std::uint64_t spec() const noexcept { return _spec; }
    std::size_t   width() const noexcept { return _parts.size(); }

    bool has_identity() const noexcept { return _identity; }
    void set_identity(bool v) noexcept { _identity = v; }

    IndexSet const& part(std::size_t slot) const { return _parts.at(slot); }
    IndexSet&       part(std::size_t slot) { return _parts.at(slot); }

    // Tail threshold per slot.
    std::vector<std::optional<Index>> tails() const;
    // (slot, index) pairs of the finite parts, ascending.
    std::vector<std::pair<std::size_t, Index>> sporadic() const;

    bool empty() const noexcept;
    bool is_subset_of(TailedElement const& other) const;
    bool intersects(TailedElement const& other) const;

    TailedElement unite(TailedElement const& other) const;
    TailedElement intersect(TailedElement const& other) const;

    friend bool operator==(TailedElement const&,
                           TailedElement const&) = default;

   private:
    void same_spec(TailedElement const& other) const;

    std::uint64_t         _spec     = 0;
    bool                  _identity = false;
    std::vector<IndexSet> _parts;
  };

  // The data defining C_E(A): a finite symmetric integral algebra A and a
  // subalgebra E given by a partition of A's diversity atoms.
  class ThinnedSpec {
   public:
    ThinnedSpec(FiniteAlgebra A, PartitionSubalg E);

    FiniteAlgebra const&   A() const noexcept { return _E.parent(); }
    PartitionSubalg const& E() const noexcept { return _E; }

    // Diversity atoms of A are numbered 0..width()-1 ("slots").
    std::size_t width() const noexcept { return _slots.size(); }
    Atom        atom_of(std::size_t slot) const { return _slots.at(slot); }
    std::size_t slot_of(Atom x) const;
    // Block of E containing the atom of the slot.
    std::size_t cover(std::size_t slot) const {
      return _E.block_of(_slots.at(slot));
    }

    std::uint64_t fingerprint() const noexcept { return _fingerprint; }

    TailedElement zero() const { return TailedElement(_fingerprint, width()); }
    TailedElement identity() const;
    // x^(i) for a diversity atom x of A.
    TailedElement atom(Atom x, Index i) const;
    // J(a, n) for an element a of A.
    TailedElement J(AtomSet const& a, Index n) const;
    TailedElement J(Atom x, Index n) const { return J(A().atom(x), n); }

    // "1' + J(e3,0) + e1@1"; "0" when empty.
    std::string format(TailedElement const& u) const;

   private:
    PartitionSubalg          _E;
    std::vector<Atom>        _slots;
    std::vector<std::size_t> _slot_of;
    std::uint64_t            _fingerprint = 0;
  };

  // x^(i) ; y^(j) by the three product rules of the construction, keyed on
  // (same cover?, same atom?, same index?). With a = c(x) = c(y):
  //   x = y, i = j : J(0'.-a.x;x, 0) + sum{z^(k) : k <= i, z <= a.x;x} + 1'
  //   x = y, i != j: J(0'.-a.x;x, 0) + sum{z^(max(i,j)) : z <= a.x;x}
  //   c(x) != c(y) : J(x;y, 0)
  //   x != y, i != j: J(0'.-a.x;y, 0) + sum{z^(max(i,j)) : z <= a.x;y}
  //   x != y, i = j : J(0'.-a.x;y, 0) + sum{z^(k) : k <= i, z <= a.x;y}
  TailedElement
  atom_product(ThinnedSpec const& spec, Atom x, Index i, Atom y, Index j);

  // u;v for tailed elements, in closed form over index sets. Equal to the
  // union of atom_product over all atom pairs of the operands.
  TailedElement tailed_product(ThinnedSpec const&   spec,
                               TailedElement const& u,
                               TailedElement const& v);

  // Symmetric difference finite: same slots carry an infinite part.
  bool almost_same(TailedElement const& u, TailedElement const& v);

  enum class FragmentKind { Bn, Dn };

  std::string to_string(FragmentKind kind);
  FragmentKind parse_fragment_kind(std::string const& s);

  // A finite subalgebra of C_E(A). Bn: atoms 1', x^(i) for i < n, and
  // J(a, n) for each block a of E. Dn: the same with J(x, n) for every
  // diversity atom x of A.
  struct FiniteFragment {
    std::size_t                n    = 0;
    FragmentKind               kind = FragmentKind::Bn;
    FiniteAlgebra              algebra;
    std::vector<TailedElement> elements;  // denotation of each atom
    AxiomReport                report;
    std::uint64_t              spec_fingerprint = 0;

    TailedElement denotation(AtomSet const& a) const;
    // The fragment element equal to u, if u is a union of fragment atoms.
    std::optional<AtomSet> decompose(TailedElement const& u) const;
  };

  // Builds the fragment, verifying that every product of two of its atoms
  // is an exact union of its atoms. Bn requires A to be a special extension
  // of E. Throws Error on a closure failure, naming the pair.
  FiniteFragment
  build_fragment(ThinnedSpec const& spec, std::size_t n, FragmentKind kind);

  struct BaseEmbedding {
    bool                       holds = false;
    FiniteFragment             fragment;
    std::vector<AtomSet>       image;  // per atom of A, inside the fragment
    std::optional<std::string> failure;
    std::size_t                products_checked = 0;
  };

  // Checks that a -> J(a, 0) embeds A into the Dn fragment.
  BaseEmbedding verify_base_embedding(ThinnedSpec const& spec, std::size_t n);

}  // namespace relalg

#endif  // RELALG_THINNED_HPP

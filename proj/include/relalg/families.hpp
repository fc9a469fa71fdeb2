#ifndef RELALG_FAMILIES_HPP
#define RELALG_FAMILIES_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"

namespace relalg {

  // The q-atom symmetric integral algebra whose diversity cycles are all the
  // 2-cycles and 3-cycles and none of the 1-cycles. Atoms are 1', e1, ...,
  // e{q-1}. Requires q >= 4.
  FiniteAlgebra build_e23(int q);

  struct SplitSpec {
    FiniteAlgebra base;
    // Number of pieces per atom of base; identity atoms must have 1.
    std::vector<std::size_t> multiplicity;

    // Multiplicities given by diversity atom name; unnamed atoms get 1.
    static SplitSpec
    make(FiniteAlgebra                                           base,
         std::vector<std::pair<std::string, std::size_t>> const& mult);
  };

  struct SplitAlgebra {
    FiniteAlgebra algebra;
    // cover[x] is the atom of the base algebra containing atom x.
    std::vector<Atom> cover;
    // Diversity atoms of the base, when the base is some E23_q.
    std::vector<std::string> colors;
    FiniteAlgebra            base;
  };

  // Splits every diversity atom a of a symmetric integral base into
  // multiplicity(a) pieces. For diversity pieces x, y:
  //   x;y = c(x);c(y) . 0'   if x != y
  //   x;y = c(x);c(y)        if x == y
  SplitAlgebra split_algebra(SplitSpec const& spec);

  // A Monk algebra: E23_q split with one multiplicity per color.
  SplitAlgebra build_monk(int q, std::vector<std::size_t> const& multiplicity);

  // A subalgebra of a symmetric integral algebra whose atoms are 1' and the
  // joins of the given blocks of diversity atoms.
  class PartitionSubalg {
   public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Throws Error unless the blocks partition the diversity atoms and their
    // joins are closed under converse and relative product.
    PartitionSubalg(FiniteAlgebra parent, std::vector<AtomSet> blocks);

    FiniteAlgebra const&        parent() const noexcept { return _parent; }
    std::vector<AtomSet> const& blocks() const noexcept { return _blocks; }
    std::size_t block_count() const noexcept { return _blocks.size(); }
    // Block containing diversity atom x; npos for identity atoms.
    std::size_t block_of(Atom x) const { return _cover.at(x); }
    std::string block_name(std::size_t b) const {
      return _parent.format(_blocks.at(b));
    }
    // Blocks as lists of atom names.
    std::vector<std::vector<std::string>> block_names() const;

    // The subalgebra itself: atoms 1' and one atom per block.
    FiniteAlgebra quotient() const;

   private:
    FiniteAlgebra            _parent;
    std::vector<AtomSet>     _blocks;
    std::vector<std::size_t> _cover;
  };

  PartitionSubalg
  make_partition(FiniteAlgebra const&                         parent,
                 std::vector<std::vector<std::string>> const& blocks);

  // The trivial partition into singletons (the algebra itself) and the
  // minimal one with a single block 0'.
  PartitionSubalg singleton_partition(FiniteAlgebra const& alg);
  PartitionSubalg minimal_partition(FiniteAlgebra const& alg);

  // The subalgebra of E23_q with alpha singleton blocks e1, ..., e_alpha and
  // the remaining atoms grouped into beta blocks of sizes 2, ..., 2, rest.
  PartitionSubalg e23_subalgebra(int q, int alpha, int beta);

  // Every (alpha, beta) subalgebra of E23_q, in lexicographic order.
  std::vector<std::pair<int, int>> e23_subalgebra_parameters(int q);

  // Pulls a partition of the base's diversity atoms back along the cover map.
  PartitionSubalg lift_partition(SplitAlgebra const&    split,
                                 PartitionSubalg const& over_base);

  struct SpecialExtensionWitness {
    int         clause;  // 1 or 2
    std::size_t a, b, c;  // blocks
    Atom        x, y;     // atoms of the parent below a and b
  };

  struct SpecialExtensionResult {
    bool                                   holds = false;
    std::optional<SpecialExtensionWitness> witness;
  };

  // Is A a special extension of the subalgebra given by E's blocks? Clause
  // (1): for blocks a, b, c, not all equal, with a;b >= c, every x <= a and
  // y <= b have x;y >= c. Clause (2): if a;a >= a then x;y . a != 0 for all
  // x, y <= a.
  SpecialExtensionResult check_special_extension(FiniteAlgebra const&   A,
                                                 PartitionSubalg const& E);

  struct FlexibleReport {
    std::vector<Atom>                flexible;
    std::vector<std::array<Atom, 3>> trios;
  };

  bool is_flexible_atom(FiniteAlgebra const& alg, Atom a);
  bool is_flexible_trio(FiniteAlgebra const& alg, Atom a, Atom b, Atom c);

  // Flexible atoms and every flexible trio a < b < c. Requires a symmetric
  // integral algebra.
  //
  // Note: a trio of individually flexible atoms is always a flexible trio,
  // but the atoms of E23_q are not flexible (a;a is the complement of a, not
  // 1), so E23_q itself has no flexible trio when the trio conditions are
  // evaluated literally. The grouped atoms of its proper subalgebras are.
  FlexibleReport find_flexible(FiniteAlgebra const& alg);

}  // namespace relalg

#endif  // RELALG_FAMILIES_HPP

#ifndef RELALG_ALGEBRA_HPP
#define RELALG_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "relalg/atom_set.hpp"
#include "relalg/atom_structure.hpp"

namespace relalg {

  // The complex algebra of a finite atom structure. Elements are AtomSets;
  // every operation is completely additive, so the atom product table
  //   x;y = {z : (x, y, z) in C}
  // determines relative multiplication on all elements.
  class FiniteAlgebra {
   public:
    FiniteAlgebra() = default;
    explicit FiniteAlgebra(AtomStructure structure);

    AtomStructure const& structure() const noexcept { return _structure; }
    std::string const&   name() const noexcept { return _structure.name(); }
    std::size_t          size() const noexcept { return _structure.size(); }
    std::string const&   atom_name(Atom x) const {
      return _structure.atom_name(x);
    }
    Atom index(std::string const& name) const { return _structure.index(name); }

    AtomSet const& product(Atom x, Atom y) const {
      return _table[x * size() + y];
    }

    AtomSet compose(AtomSet const& a, AtomSet const& b) const;
    AtomSet converse(AtomSet const& a) const;
    Atom    converse(Atom x) const { return _structure.converse(x); }

    AtomSet bottom() const { return AtomSet(size()); }
    AtomSet top() const { return AtomSet::full(size()); }
    AtomSet const& identity() const noexcept { return _structure.identity(); }
    AtomSet diversity() const { return identity().complement(); }
    std::vector<Atom> diversity_atoms() const { return diversity().members(); }
    AtomSet atom(Atom x) const {
      AtomSet s(size());
      s.insert(x);
      return s;
    }

    // Element from atom names, e.g. {"e1", "e2"}.
    AtomSet element(std::vector<std::string> const& names) const;
    // "e1+e2", "0" for the empty element.
    std::string format(AtomSet const& a) const;

    bool is_symmetric() const noexcept { return _structure.is_symmetric(); }
    bool is_integral() const;

    friend bool operator==(FiniteAlgebra const& a, FiniteAlgebra const& b) {
      return a._structure == b._structure;
    }

   private:
    AtomStructure        _structure;
    std::vector<AtomSet> _table;
  };

  inline FiniteAlgebra build_algebra(AtomStructure s) {
    return FiniteAlgebra(std::move(s));
  }

  struct Counterexample {
    std::string       axiom;
    std::vector<Atom> witness;

    friend bool operator==(Counterexample const&,
                           Counterexample const&) = default;
  };

  struct AxiomReport {
    bool                        is_na          = false;
    bool                        is_associative = false;
    bool                        is_symmetric   = false;
    bool                        is_integral    = false;
    std::vector<Counterexample> counterexamples;

    bool is_ra() const noexcept { return is_na && is_associative; }
  };

  // Checks the NA axioms and associativity at atom level. Each failing axiom
  // contributes one counterexample: its lexicographically least witness.
  AxiomReport check_axioms(FiniteAlgebra const& alg);

  struct Subalgebra {
    FiniteAlgebra algebra;
    // inclusion[a] is the element of the parent that atom a denotes.
    std::vector<AtomSet> inclusion;
  };

  // Least subalgebra containing gens (and 1'), closed under join, complement,
  // converse and relative product. Its atoms are the minimal nonzero
  // elements, listed in order of their least parent atom.
  Subalgebra generate_subalgebra(FiniteAlgebra const&        alg,
                                 std::vector<AtomSet> const& gens);

  // Checks that image is an embedding of src into dst: images of atoms are
  // disjoint, nonzero and join to 1, and 1', converse and atom products are
  // preserved. Returns a description of the first failure, if any.
  std::optional<std::string>
  check_embedding(FiniteAlgebra const&        src,
                  FiniteAlgebra const&        dst,
                  std::vector<AtomSet> const& image);

  // Exhaustive search for an embedding src -> dst.
  std::optional<std::vector<AtomSet>> find_embedding(FiniteAlgebra const& src,
                                                     FiniteAlgebra const& dst);

}  // namespace relalg

#endif  // RELALG_ALGEBRA_HPP

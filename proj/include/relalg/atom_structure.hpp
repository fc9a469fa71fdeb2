#ifndef RELALG_ATOM_STRUCTURE_HPP
#define RELALG_ATOM_STRUCTURE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "relalg/atom_set.hpp"

namespace relalg {

  using Triple = std::array<Atom, 3>;

  // The Peircean transforms of (x, y, z): the cycle [x, y, z], sorted and
  // deduplicated. Throws if an index is outside the converse table.
  std::vector<Triple> close_cycle(Atom                  x,
                                  Atom                  y,
                                  Atom                  z,
                                  std::span<Atom const> converse);

  // Lexicographically least member of the cycle of (x, y, z).
  Triple cycle_representative(Triple t, std::span<Atom const> converse);

  // How cycle input that is not closed under the Peircean transforms is
  // treated.
  enum class CycleInput {
    close,  // close it and record a warning
    strict  // reject with a witness
  };

  // Atom structure <At, C, converse, I>. Atoms are identified by their
  // position in the list, which is the file order. The cycle relation is
  // always closed after construction.
  class AtomStructure {
   public:
    AtomStructure() = default;

    AtomStructure(std::string                                      name,
                  std::vector<std::string>                         atoms,
                  std::vector<std::string> const&                  identity,
                  std::vector<std::pair<std::string, std::string>> converse,
                  std::vector<std::array<std::string, 3>> const&   cycles,
                  CycleInput mode = CycleInput::close);

    static AtomStructure from_indices(std::string              name,
                                      std::vector<std::string> atoms,
                                      AtomSet                  identity,
                                      std::vector<Atom>        converse,
                                      std::vector<Triple> const& cycles,
                                      CycleInput mode = CycleInput::close);

    std::string const& name() const noexcept { return _name; }
    void set_name(std::string name) { _name = std::move(name); }

    std::size_t size() const noexcept { return _atoms.size(); }
    std::vector<std::string> const& atom_names() const noexcept {
      return _atoms;
    }
    std::string const& atom_name(Atom x) const { return _atoms.at(x); }

    // Throws Error for an unknown name.
    Atom index(std::string const& name) const;
    std::optional<Atom> find(std::string const& name) const;

    AtomSet const& identity() const noexcept { return _identity; }
    Atom converse(Atom x) const { return _converse.at(x); }
    std::vector<Atom> const& converse_table() const noexcept {
      return _converse;
    }
    bool is_symmetric() const noexcept;

    bool has_cycle(Atom x, Atom y, Atom z) const noexcept {
      return _cycles[(x * size() + y) * size() + z] != 0;
    }

    // Every stored triple, ascending.
    std::vector<Triple> triples() const;
    // One representative per cycle, ascending; the canonical cycle list.
    std::vector<Triple> representatives() const;

    // Non-empty when the input cycles were not closed and had to be closed.
    std::string const& closure_warning() const noexcept { return _warning; }

    std::vector<Triple> cycle_of(std::string const& x,
                                 std::string const& y,
                                 std::string const& z) const;

    friend bool operator==(AtomStructure const& a, AtomStructure const& b) {
      return a._atoms == b._atoms && a._identity == b._identity
             && a._converse == b._converse && a._cycles == b._cycles;
    }

   private:
    void build_index();
    void validate() const;
    void add_cycles(std::vector<Triple> const& reps, CycleInput mode);

    std::string                             _name;
    std::vector<std::string>                _atoms;
    std::unordered_map<std::string, Atom>   _index;
    AtomSet                                 _identity;
    std::vector<Atom>                       _converse;
    std::vector<std::uint8_t>               _cycles;
    std::string                             _warning;
  };

}  // namespace relalg

#endif  // RELALG_ATOM_STRUCTURE_HPP

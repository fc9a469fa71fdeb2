#include "relalg/atom_structure.hpp"

#include <algorithm>
#include <set>

namespace relalg {

  std::vector<Triple> close_cycle(Atom                  x,
                                  Atom                  y,
                                  Atom                  z,
                                  std::span<Atom const> converse) {
    auto const n = converse.size();
    if (x >= n || y >= n || z >= n) {
      throw Error("close_cycle: unknown atom index");
    }
    auto cv = [&](Atom a) { return converse[a]; };
    std::vector<Triple> out = {{x, y, z},
                               {cv(x), z, y},
                               {y, cv(z), cv(x)},
                               {cv(y), cv(x), cv(z)},
                               {cv(z), x, cv(y)},
                               {z, cv(y), x}};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Triple cycle_representative(Triple t, std::span<Atom const> converse) {
    return close_cycle(t[0], t[1], t[2], converse).front();
  }

  AtomStructure::AtomStructure(
      std::string                                      name,
      std::vector<std::string>                         atoms,
      std::vector<std::string> const&                  identity,
      std::vector<std::pair<std::string, std::string>> converse,
      std::vector<std::array<std::string, 3>> const&   cycles,
      CycleInput                                       mode)
      : _name(std::move(name)), _atoms(std::move(atoms)) {
    build_index();
    _identity = AtomSet(size());
    for (auto const& e : identity) {
      _identity.insert(index(e));
    }
    _converse.resize(size());
    for (Atom x = 0; x < size(); ++x) {
      _converse[x] = x;
    }
    for (auto const& [a, b] : converse) {
      Atom x = index(a), y = index(b);
      _converse[x] = y;
      _converse[y] = x;
    }
    validate();
    std::vector<Triple> reps;
    reps.reserve(cycles.size());
    for (auto const& c : cycles) {
      reps.push_back({index(c[0]), index(c[1]), index(c[2])});
    }
    add_cycles(reps, mode);
  }

  AtomStructure AtomStructure::from_indices(std::string                name,
                                            std::vector<std::string>   atoms,
                                            AtomSet                    identity,
                                            std::vector<Atom>          converse,
                                            std::vector<Triple> const& cycles,
                                            CycleInput                 mode) {
    AtomStructure s;
    s._name  = std::move(name);
    s._atoms = std::move(atoms);
    s.build_index();
    if (identity.universe() != s.size() || converse.size() != s.size()) {
      throw Error("atom structure: identity/converse size mismatch");
    }
    s._identity = std::move(identity);
    s._converse = std::move(converse);
    s.validate();
    s.add_cycles(cycles, mode);
    return s;
  }

  void AtomStructure::build_index() {
    if (_atoms.empty()) {
      throw Error("atom structure: no atoms");
    }
    _index.clear();
    for (Atom x = 0; x < _atoms.size(); ++x) {
      auto const& a = _atoms[x];
      if (a.empty()
          || a.find_first_of(" \t\r\n#") != std::string::npos) {
        throw Error("atom structure: invalid atom name '" + a + "'");
      }
      if (!_index.emplace(a, x).second) {
        throw Error("atom structure: duplicate atom name '" + a + "'");
      }
    }
  }

  void AtomStructure::validate() const {
    if (_identity.empty()) {
      throw Error("atom structure: identity set is empty");
    }
    for (Atom x = 0; x < size(); ++x) {
      if (_converse[x] >= size() || _converse[_converse[x]] != x) {
        throw Error("atom structure: converse is not an involution at '"
                    + _atoms[x] + "'");
      }
    }
  }

  void AtomStructure::add_cycles(std::vector<Triple> const& reps,
                                 CycleInput                 mode) {
    auto const n = size();
    _cycles.assign(n * n * n, 0);
    std::set<Triple> given;
    for (auto const& t : reps) {
      if (t[0] >= n || t[1] >= n || t[2] >= n) {
        throw Error("atom structure: cycle names an unknown atom");
      }
      given.insert(t);
    }
    std::size_t added = 0;
    for (auto const& t : given) {
      for (auto const& u : close_cycle(t[0], t[1], t[2], _converse)) {
        if (given.count(u) == 0) {
          if (mode == CycleInput::strict) {
            throw Error("atom structure: cycle set not closed: ("
                        + _atoms[t[0]] + "," + _atoms[t[1]] + ","
                        + _atoms[t[2]] + ") present but (" + _atoms[u[0]]
                        + "," + _atoms[u[1]] + "," + _atoms[u[2]]
                        + ") missing");
          }
        }
        auto& slot = _cycles[(u[0] * n + u[1]) * n + u[2]];
        if (slot == 0 && given.count(u) == 0) {
          ++added;
        }
        slot = 1;
      }
    }
    // A list of canonical representatives is the normal input form; only a
    // partial list of arbitrary triples earns a warning.
    _warning.clear();
    if (added != 0) {
      bool all_reps = true;
      for (auto const& t : given) {
        if (cycle_representative(t, _converse) != t) {
          all_reps = false;
          break;
        }
      }
      if (!all_reps) {
        _warning = "cycle input not closed; added " + std::to_string(added)
                   + " transformed triples";
      }
    }
  }

  Atom AtomStructure::index(std::string const& name) const {
    auto it = _index.find(name);
    if (it == _index.end()) {
      throw Error("unknown atom '" + name + "'");
    }
    return it->second;
  }

  std::optional<Atom> AtomStructure::find(std::string const& name) const {
    auto it = _index.find(name);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool AtomStructure::is_symmetric() const noexcept {
    for (Atom x = 0; x < size(); ++x) {
      if (_converse[x] != x) {
        return false;
      }
    }
    return true;
  }

  std::vector<Triple> AtomStructure::triples() const {
    std::vector<Triple> out;
    auto const          n = size();
    for (Atom x = 0; x < n; ++x) {
      for (Atom y = 0; y < n; ++y) {
        for (Atom z = 0; z < n; ++z) {
          if (has_cycle(x, y, z)) {
            out.push_back({x, y, z});
          }
        }
      }
    }
    return out;
  }

  std::vector<Triple> AtomStructure::representatives() const {
    std::vector<Triple> out;
    for (auto const& t : triples()) {
      if (cycle_representative(t, _converse) == t) {
        out.push_back(t);
      }
    }
    return out;
  }

  std::vector<Triple> AtomStructure::cycle_of(std::string const& x,
                                              std::string const& y,
                                              std::string const& z) const {
    return close_cycle(index(x), index(y), index(z), _converse);
  }

}  // namespace relalg

#ifndef RELALG_IO_HPP
#define RELALG_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/families.hpp"
#include "relalg/representations.hpp"

namespace relalg {

  // Lineage of a fragment: the fingerprint of its (A, E) pair, n and kind.
  struct Provenance {
    std::uint64_t spec = 0;
    std::size_t   n    = 0;
    std::string   kind;

    friend bool operator==(Provenance const&, Provenance const&) = default;
  };

  // An algebra plus the optional annotations the text format carries.
  //
  //   name E23_4
  //   atoms 1' e1 e2 e3
  //   identity 1'
  //   symmetric true
  //   converse r r~          (only when symmetric is false)
  //   cycle 1' e1 e1         (least member of each cycle, ascending)
  //   colors e1 e2 e3        (Monk algebras)
  //   cover e1_1 e1          (per split diversity atom)
  //   multiplicity e1 2
  //   block e1 e2            (a partition subalgebra)
  //   provenance spec=00ff.. n=2 kind=Bn
  //
  // '#' starts a comment. Cycle lines may name any member of a cycle.
  struct AlgebraFile {
    FiniteAlgebra                                     algebra;
    std::vector<std::string>                          colors;
    std::vector<std::pair<std::string, std::string>>  cover;
    std::vector<std::pair<std::string, std::size_t>>  multiplicity;
    std::vector<std::vector<std::string>>             blocks;
    std::optional<Provenance>                         provenance;

    friend bool operator==(AlgebraFile const&, AlgebraFile const&) = default;
  };

  std::string write_algebra(AlgebraFile const& file);
  std::string write_algebra(FiniteAlgebra const& alg);
  // Throws Error naming the line on malformed input.
  AlgebraFile parse_algebra(std::string const& text);

  AlgebraFile from_split(SplitAlgebra const& split);
  AlgebraFile from_partition(PartitionSubalg const& part);
  // Rebuilds the split from the colors and cover annotations; the base is
  // E23_q with q - 1 colors.
  SplitAlgebra to_split(AlgebraFile const& file);
  PartitionSubalg to_partition(AlgebraFile const& file);

  // "n" on the first line, then n rows of n atom names.
  std::string  write_labeling(FiniteAlgebra const& alg, EdgeLabeling const& lab);
  EdgeLabeling parse_labeling(FiniteAlgebra const& alg, std::string const& text);

  // One residue class per line.
  std::vector<std::vector<int>> parse_partition(std::string const& text);

  // "dim k", then one flattened matrix per line.
  std::string write_matrices(FiniteAlgebra const&            alg,
                             std::size_t                     k,
                             std::vector<BasicMatrix> const& M);
  std::vector<BasicMatrix> parse_matrices(FiniteAlgebra const& alg,
                                          std::string const&   text,
                                          std::size_t&         k);

  std::string read_text_file(std::string const& path);
  void        write_text_file(std::string const& path, std::string const& text);

}  // namespace relalg

#endif  // RELALG_IO_HPP

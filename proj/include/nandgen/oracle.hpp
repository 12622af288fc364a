#pragma once

#include <nandgen/netlist.hpp>

#include <cstdint>
#include <functional>
#include <optional>

namespace nandgen
{

/// Default ceiling on the number of genomes a single enumeration may visit.
inline constexpr std::uint64_t default_enumeration_budget = 100'000'000;

/// Number of valid genomes with the given shape: prod_{i<G} (n + i)^2.
/// Returns nullopt when the count does not fit in 64 bits.
std::optional<std::uint64_t> genome_count( std::uint32_t num_inputs, std::uint32_t num_gates );

/// Throws capacity_error when genome_count exceeds budget.
void check_budget( std::uint32_t num_inputs, std::uint32_t num_gates, std::uint64_t budget );

/*! \brief Visits every valid genome of the given shape exactly once.
 *
 * Order is lexicographic over the allele tuple (gate 0 input a most
 * significant; within a gene, external inputs before gates). The visitor may
 * return false to stop early.
 */
void enumerate_genomes( std::uint32_t num_inputs, std::uint32_t num_gates,
                        std::function<bool( nand_genome const& )> const& visit,
                        std::uint64_t budget = default_enumeration_budget );

struct solution_count
{
  std::uint64_t raw{ 0 };
  std::uint64_t canonical{ 0 };
  /// First solution in enumeration order.
  std::optional<nand_genome> first;
};

/// All genomes with exactly num_gates gates realizing target.
solution_count count_solutions( truth_table const& target, std::uint32_t num_gates,
                                std::uint64_t budget = default_enumeration_budget );

struct minimality_result
{
  truth_table target;
  std::uint32_t max_gates{ 0 };
  /// nullopt means no realization with at most max_gates gates.
  std::optional<std::uint32_t> minimal_gates;
  std::optional<nand_genome> witness;
  std::uint64_t raw_count{ 0 };
  std::uint64_t canonical_count{ 0 };
};

/// Smallest gate count up to max_gates realizing target. The budget must
/// hold for every gate count up to max_gates; this is checked before searching.
minimality_result minimal_gates( truth_table const& target, std::uint32_t max_gates,
                                 std::uint64_t budget = default_enumeration_budget );

/// {"target", "max_gates", "minimal_gates", "witness", "raw_count", "canonical_count"}.
std::string to_json( minimality_result const& result );

} // namespace nandgen

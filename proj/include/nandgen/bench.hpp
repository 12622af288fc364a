#pragma once

#include <nandgen/evolve.hpp>
#include <nandgen/netlist.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nandgen
{

struct experiment_entry
{
  /// Preset name ("xnor") or "tt:<bits>" literal; used as the report label.
  std::string label;
  truth_table target;
  std::uint32_t num_gates{ 1 };
  std::uint32_t population_size{ 10 };
  std::uint32_t mutation_millionths{ 100'000 };
  std::uint32_t runs{ 10 };
  std::uint64_t base_seed{ 0 };
  std::uint64_t max_generations{ 100'000 };

  /// Run i uses seed base_seed + i.
  std::uint64_t seed_for( std::uint32_t run_index ) const noexcept { return base_seed + run_index; }
  ga_config config_for( std::uint32_t run_index ) const;
};

struct experiment_spec
{
  std::vector<experiment_entry> entries;
};

/// AND/2, OR/3, NOR/4, XOR/4, XNOR/5 gates with the given population and runs.
experiment_spec paper_default_spec( std::uint64_t base_seed, std::uint32_t runs = 10, std::uint32_t population_size = 10 );

/// Entry built from a target string ("and" or "tt:0110").
experiment_entry make_entry( std::string const& target, std::uint32_t num_gates );

/*! Parses {"entries": [{"target": ..., "num_gates": ..., ...}, ...]}.
 *  Optional fields default like experiment_entry; num_gates defaults to the
 *  preset's known size. Diagnostics name the offending field. */
experiment_spec parse_experiment_spec( std::string_view text );

struct run_row
{
  std::uint32_t run_index;
  std::uint64_t seed;
  bool solved;
  /// Solution generation, or generations run when exhausted.
  std::uint64_t generations;
  /// Solution, or the best individual when exhausted.
  nand_genome genome;
  fitness_value best_fitness;
  /// Hex canonical key of the pruned solution; empty when exhausted.
  std::string distinct_key;
};

struct generation_stats
{
  double mean;
  double median;
  /// Sample standard deviation (n - 1); 0 for a single run.
  double stddev;
  std::uint64_t min;
  std::uint64_t max;
};

/// nullopt for an empty sample.
std::optional<generation_stats> summarize( std::vector<std::uint64_t> generations );

struct entry_report
{
  experiment_entry entry;
  std::vector<run_row> rows;
  std::uint32_t solve_count{ 0 };
  std::uint32_t exhausted_count{ 0 };
  /// Over solved runs only.
  std::optional<generation_stats> stats;
  std::uint32_t distinct_solution_count{ 0 };
};

struct experiment_report
{
  std::vector<entry_report> entries;
};

/// Recomputes the aggregates of an entry from its rows.
void aggregate( entry_report& report );

run_row run_single( experiment_entry const& entry, std::uint32_t run_index );

/*! \brief Executes every run of every entry.
 *
 * Runs are distributed over worker threads (0 picks the hardware
 * concurrency); rows are merged in (entry, run index) order so the report
 * does not depend on scheduling. Config errors are reported with the entry
 * index before any run starts.
 */
experiment_report run_experiment( experiment_spec const& spec, unsigned threads = 0 );

/// Header, one "run" row per run, then one "summary" row per entry.
std::string emit_csv( experiment_report const& report );

/// Plain table: label, num_gates, population_size, mean, stddev per entry.
std::string emit_plot_table( experiment_report const& report );

/// Bar chart of mean generations per entry with stddev whiskers.
std::string emit_plot_svg( experiment_report const& report );

/// Shortest decimal text that round-trips the value.
std::string format_number( double value );

} // namespace nandgen

#pragma once

#include <nandgen/netlist.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace nandgen
{

/// Seeded 64-bit Mersenne Twister with a platform-independent bounded draw.
class rng
{
public:
  explicit rng( std::uint64_t seed ) : engine_( seed ) {}

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below( std::uint64_t bound );

private:
  std::mt19937_64 engine_;
};

/// Probabilities are held in millionths so that 2 * split + mutation == 1 exactly.
inline constexpr std::uint32_t rate_denominator = 1'000'000;

struct ga_config
{
  std::uint32_t population_size{ 10 };
  std::uint32_t num_gates{ 1 };
  /// Expected target arity; 0 accepts whatever the target has.
  std::uint32_t num_inputs{ 0 };
  /// Mutation probability per gene, in millionths (100000 == 0.10).
  std::uint32_t mutation_millionths{ 100'000 };
  std::uint64_t max_generations{ 100'000 };
  std::uint64_t seed{ 0 };
  /// Record best/mean fitness for every evaluated generation.
  bool trace{ false };

  double mutation_rate() const noexcept { return static_cast<double>( mutation_millionths ) / rate_denominator; }
  /// Probability of inheriting from each parent, in millionths of one half:
  /// each parent is chosen with probability (1 - mutation) / 2.
  std::uint32_t inherit_half_millionths() const noexcept { return rate_denominator - mutation_millionths; }

  /// Rounds to the nearest millionth; throws config_error outside [0, 1].
  void set_mutation_rate( double rate );

  /// Throws config_error on population < 2, zero gates or mutation > 1.
  void validate() const;
};

struct individual
{
  nand_genome genome;
  fitness_value fit;

  friend bool operator==( individual const&, individual const& ) = default;
};

using population = std::vector<individual>;

struct trace_row
{
  std::uint64_t generation;
  double best_fitness;
  double mean_fitness;

  friend bool operator==( trace_row const&, trace_row const& ) = default;
};

struct solved
{
  nand_genome genome;
  std::uint64_t generation;

  friend bool operator==( solved const&, solved const& ) = default;
};

struct exhausted
{
  individual best;
  std::uint64_t generations_run;

  friend bool operator==( exhausted const&, exhausted const& ) = default;
};

struct run_outcome
{
  std::variant<solved, exhausted> status;
  std::vector<trace_row> trace;

  bool is_solved() const noexcept { return std::holds_alternative<solved>( status ); }
  /// Generation of the solution, or the number of generations run when exhausted.
  std::uint64_t generations() const noexcept;
  /// Solution genome, or the best individual seen when exhausted.
  nand_genome const& genome() const noexcept;

  friend bool operator==( run_outcome const&, run_outcome const& ) = default;
};

/// Optional observers for instrumentation; none of them may touch the rng.
struct run_hooks
{
  /// Called once per evaluated generation, before the termination check.
  std::function<void( std::uint64_t generation, population const& )> on_generation;
  /// Called for every pair of parents selected for breeding.
  std::function<void( individual const& a, individual const& b )> on_parents;
  /// Called when the breeding pool is empty and the population is reinitialized.
  std::function<void()> on_reseed;
};

/// Every gene uniform over its position's allele space (n + gate index choices).
nand_genome random_genome( rng& gen, std::uint32_t num_inputs, std::uint32_t num_gates );

/*! \brief One child from two parents of the same shape.
 *
 * Per gene: parent a with probability (1 - m) / 2, parent b with probability
 * (1 - m) / 2, otherwise a fresh uniform draw from the full allele space
 * (which may coincide with a parental value).
 */
nand_genome breed( nand_genome const& parent_a, nand_genome const& parent_b, rng& gen, ga_config const& config );

/// Evaluates each genome against target with a shared simulator.
population evaluate_population( std::vector<nand_genome> genomes, truth_table const& target );

/*! \brief One generational step.
 *
 * Members with zero fitness are dropped from the breeding pool. Each of the
 * population_size children gets two parents drawn uniformly with replacement
 * from the pool. If the pool is empty the population is reinitialized at
 * random instead. Children replace the old population and are evaluated.
 */
population step_generation( population const& current, truth_table const& target, rng& gen, ga_config const& config,
                            run_hooks const& hooks = {} );

/// Initial random population (generation 0), evaluated.
population initial_population( truth_table const& target, rng& gen, ga_config const& config );

/*! \brief Runs the GA until a perfect individual appears or the generation cap is passed.
 *
 * Generation 0 is the initial population. A perfect member (lowest index
 * first) ends the run as solved at the current generation. After generation
 * max_generations has been evaluated without success the run is exhausted,
 * carrying the best individual seen (earliest generation, then lowest index).
 */
run_outcome run_evolution( ga_config const& config, truth_table const& target, run_hooks const& hooks = {} );

} // namespace nandgen

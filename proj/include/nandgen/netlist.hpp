#pragma once

#include <nandgen/error.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nandgen
{

/// Widest truth table that will be materialized (2^16 rows).
inline constexpr std::uint32_t max_table_inputs = 16;

/*! \brief Single-output Boolean function given by its full table of rows.
 *
 * Row i holds the output for the assignment in which external input k takes
 * the value of bit k of i (input 0 is the least significant bit). Rows are
 * packed 64 per word; bits past row 2^n - 1 are always zero.
 */
class truth_table
{
public:
  truth_table() = default;

  /// All-zero table; throws capacity_error when num_inputs exceeds max_table_inputs.
  explicit truth_table( std::uint32_t num_inputs );

  /// Parses a row string such as "0001" (character i is row i). The length
  /// must be a power of two between 2 and 2^16.
  static truth_table from_bits( std::string_view rows );

  /// Takes ownership of packed words; padding bits are cleared.
  static truth_table from_words( std::uint32_t num_inputs, std::vector<std::uint64_t> words );

  std::uint32_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_rows() const noexcept { return std::size_t{ 1 } << num_inputs_; }
  std::span<std::uint64_t const> words() const noexcept { return words_; }

  bool get( std::size_t row ) const;
  void set( std::size_t row, bool value );

  std::string to_bits() const;

  friend bool operator==( truth_table const&, truth_table const& ) = default;

private:
  std::uint32_t num_inputs_{ 0 };
  std::vector<std::uint64_t> words_{ 0u };
};

/// Number of 64-bit words backing a table of the given arity.
std::size_t table_words( std::uint32_t num_inputs ) noexcept;

/// Mask of the valid row bits in the last word of a table.
std::uint64_t last_word_mask( std::uint32_t num_inputs ) noexcept;

/// Named two-input presets: and, or, nor, xor, xnor, nand.
std::optional<truth_table> preset_table( std::string_view name );

/// Smallest known NAND realization size for a preset, used as its default gate count.
std::optional<std::uint32_t> preset_gate_count( std::string_view name );

/// Accepts a preset name or "tt:<bits>".
truth_table parse_target( std::string_view text );

enum class source_kind : std::uint8_t
{
  external,
  gate
};

/// One gene value: where a gate input is wired from.
struct input_source
{
  source_kind kind{ source_kind::external };
  std::uint32_t index{ 0 };

  static constexpr input_source external( std::uint32_t k ) noexcept { return { source_kind::external, k }; }
  static constexpr input_source gate( std::uint32_t j ) noexcept { return { source_kind::gate, j }; }

  /// Alleles of gate i are numbered 0..n+i-1: external inputs first, then gates.
  static constexpr input_source from_allele( std::uint32_t num_inputs, std::uint32_t allele ) noexcept
  {
    return allele < num_inputs ? external( allele ) : gate( allele - num_inputs );
  }
  constexpr std::uint32_t allele( std::uint32_t num_inputs ) const noexcept
  {
    return kind == source_kind::external ? index : num_inputs + index;
  }

  friend constexpr auto operator<=>( input_source const&, input_source const& ) = default;
};

struct nand_gate
{
  input_source a;
  input_source b;

  friend constexpr auto operator<=>( nand_gate const&, nand_gate const& ) = default;
};

/*! \brief Feed-forward NAND netlist; the output of the last gate is the circuit output.
 *
 * Gate i may read external inputs and gates 0..i-1 only. The constructor
 * enforces this, so every value of this type is acyclic.
 */
class nand_genome
{
public:
  nand_genome( std::uint32_t num_inputs, std::vector<nand_gate> gates );

  std::uint32_t num_inputs() const noexcept { return num_inputs_; }
  std::size_t num_gates() const noexcept { return gates_.size(); }
  std::size_t num_genes() const noexcept { return 2 * gates_.size(); }
  std::span<nand_gate const> gates() const noexcept { return gates_; }
  nand_gate const& gate( std::size_t i ) const { return gates_.at( i ); }

  /// Gene g is input a (g even) or b (g odd) of gate g / 2.
  input_source gene( std::size_t g ) const;

  /// Number of alleles available at gene position g: n + (g / 2).
  std::uint32_t allele_count( std::size_t g ) const noexcept;

  friend bool operator==( nand_genome const&, nand_genome const& ) = default;

private:
  std::uint32_t num_inputs_;
  std::vector<nand_gate> gates_;
};

/// Throws structural_error unless every source is in range for its gate position.
void validate( std::uint32_t num_inputs, std::span<nand_gate const> gates );

/// Builds a genome from allele indices, two per gate.
nand_genome genome_from_alleles( std::uint32_t num_inputs, std::span<std::uint32_t const> alleles );

/// Scalar single-row evaluation, gate by gate.
bool evaluate( nand_genome const& genome, std::span<bool const> assignment );

/*! \brief Reusable buffers for bit-sliced evaluation of many genomes of one arity.
 *
 * Not thread-safe; give each thread its own instance.
 */
class simulator
{
public:
  explicit simulator( std::uint32_t num_inputs );

  std::uint32_t num_inputs() const noexcept { return num_inputs_; }

  /// Table of the circuit output; padding bits are cleared.
  truth_table run( nand_genome const& genome );

  /// Number of rows on which the genome agrees with target.
  std::size_t matches( nand_genome const& genome, truth_table const& target );

  /// Projection of input k onto the packed row layout.
  std::span<std::uint64_t const> input_pattern( std::uint32_t k ) const;

private:
  std::span<std::uint64_t const> simulate( nand_genome const& genome );

  std::uint32_t num_inputs_;
  std::size_t words_;
  std::vector<std::uint64_t> inputs_;
  std::vector<std::uint64_t> gates_;
};

truth_table truth_table_of( nand_genome const& genome );

/// Exact fraction of matching rows.
struct fitness_value
{
  std::uint32_t matches{ 0 };
  std::uint32_t rows{ 1 };

  bool perfect() const noexcept { return matches == rows; }
  bool zero() const noexcept { return matches == 0; }
  double as_double() const noexcept { return static_cast<double>( matches ) / static_cast<double>( rows ); }

  friend bool operator==( fitness_value const& x, fitness_value const& y ) noexcept
  {
    return std::uint64_t{ x.matches } * y.rows == std::uint64_t{ y.matches } * x.rows;
  }
  friend std::strong_ordering operator<=>( fitness_value const& x, fitness_value const& y ) noexcept
  {
    return std::uint64_t{ x.matches } * y.rows <=> std::uint64_t{ y.matches } * x.rows;
  }
};

fitness_value fitness( nand_genome const& genome, truth_table const& target );

/// Keeps only gates on a backward path from the output gate, renumbered in order.
nand_genome prune_dead_gates( nand_genome const& genome );

/// Byte serialization of the pruned genome; equal keys mean identical pruned structure.
std::string canonical_key( nand_genome const& genome );

std::string to_hex( std::string_view bytes );

/// {"inputs": n, "gates": [[src, src], ...]} with src = {"type": "external"|"gate", "index": k}.
std::string export_json( nand_genome const& genome );

/// Throws format_error (type/shape problems) or structural_error (bad references);
/// messages carry the JSON location of the offending value.
nand_genome parse_json( std::string_view text );

/// Graphviz digraph: nodes x<k> and g<j>, edges source -> gate, output gate marked.
std::string export_dot( nand_genome const& genome );

} // namespace nandgen

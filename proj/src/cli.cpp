#include <nandgen/cli.hpp>

#include <nandgen/bench.hpp>
#include <nandgen/evolve.hpp>
#include <nandgen/netlist.hpp>
#include <nandgen/oracle.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace nandgen::cli
{

namespace
{

/// Failure that maps directly to an exit code.
struct cli_failure
{
  int code;
  std::string message;
};

std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw cli_failure{ no_input, "cannot read " + path };
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if ( in.bad() )
  {
    throw cli_failure{ no_input, "cannot read " + path };
  }
  return buffer.str();
}

void write_file( std::string const& path, std::string const& text )
{
  std::ofstream file( path, std::ios::binary | std::ios::trunc );
  file << text;
  file.close();
  if ( !file )
  {
    throw cli_failure{ cant_create, "cannot write " + path };
  }
}

truth_table resolve_target( std::string const& text, std::optional<std::uint32_t> inputs )
{
  auto table = parse_target( text );
  if ( inputs && *inputs != table.num_inputs() )
  {
    throw arity_error( "target " + text + " has " + std::to_string( table.num_inputs() ) + " inputs but --inputs is " +
                       std::to_string( *inputs ) );
  }
  return table;
}

struct evolve_flags
{
  std::string target;
  std::optional<std::uint32_t> inputs;
  std::optional<std::uint32_t> gates;
  std::uint32_t pop{ 10 };
  double mutation{ 0.10 };
  std::uint64_t max_gen{ 100'000 };
  std::uint64_t seed{ 0 };
  std::string export_json;
  std::string export_dot;
  bool trace{ false };
};

struct bench_flags
{
  std::string spec;
  bool paper_defaults{ false };
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> runs;
  std::optional<std::uint32_t> pop;
  std::optional<double> mutation;
  std::optional<std::uint64_t> max_gen;
  std::string out;
  std::string svg;
  std::string table;
  unsigned threads{ 0 };
};

struct oracle_flags
{
  std::string target;
  std::optional<std::uint32_t> inputs;
  std::uint32_t max_gates{ 6 };
  std::uint64_t budget{ default_enumeration_budget };
  std::string export_json;
  std::string export_dot;
};

struct show_flags
{
  std::string netlist;
  std::string target;
  std::string export_dot;
  bool dot{ false };
};

int cmd_evolve( evolve_flags const& flags, std::ostream& out, std::ostream& err )
{
  auto const target = resolve_target( flags.target, flags.inputs );
  auto gates = flags.gates;
  if ( !gates )
  {
    gates = preset_gate_count( flags.target );
    if ( !gates )
    {
      throw cli_failure{ usage, "--gates is required for truth-table literal targets" };
    }
  }

  ga_config config;
  config.population_size = flags.pop;
  config.num_gates = *gates;
  config.num_inputs = target.num_inputs();
  config.set_mutation_rate( flags.mutation );
  config.max_generations = flags.max_gen;
  config.seed = flags.seed;
  config.trace = flags.trace;

  auto const outcome = run_evolution( config, target );
  if ( flags.trace )
  {
    err << "generation,best_fitness,mean_fitness\n";
    for ( auto const& row : outcome.trace )
    {
      err << row.generation << ',' << format_number( row.best_fitness ) << ',' << format_number( row.mean_fitness )
          << '\n';
    }
  }

  auto const& genome = outcome.genome();
  auto const json = export_json( genome );
  if ( !flags.export_json.empty() )
  {
    write_file( flags.export_json, json + "\n" );
  }
  if ( !flags.export_dot.empty() )
  {
    write_file( flags.export_dot, export_dot( genome ) );
  }
  out << json << '\n';

  if ( outcome.is_solved() )
  {
    err << "solved at generation " << outcome.generations() << '\n';
    return ok;
  }
  auto const best = std::get<exhausted>( outcome.status ).best.fit;
  err << "exhausted after " << outcome.generations() << " generations; best fitness " << best.matches << '/'
      << best.rows << " (" << format_number( best.as_double() ) << ")\n";
  return exhausted_run;
}

int cmd_bench( bench_flags const& flags, std::ostream& out )
{
  if ( flags.paper_defaults == !flags.spec.empty() )
  {
    throw cli_failure{ usage, "exactly one of --spec or --paper-defaults is required" };
  }
  experiment_spec spec = flags.paper_defaults ? paper_default_spec( flags.seed.value_or( 0 ) )
                                              : parse_experiment_spec( read_file( flags.spec ) );
  for ( auto& entry : spec.entries )
  {
    if ( flags.seed )
    {
      entry.base_seed = *flags.seed;
    }
    if ( flags.runs )
    {
      entry.runs = *flags.runs;
    }
    if ( flags.pop )
    {
      entry.population_size = *flags.pop;
    }
    if ( flags.mutation )
    {
      ga_config scratch;
      scratch.set_mutation_rate( *flags.mutation );
      entry.mutation_millionths = scratch.mutation_millionths;
    }
    if ( flags.max_gen )
    {
      entry.max_generations = *flags.max_gen;
    }
  }

  auto const report = run_experiment( spec, flags.threads );
  auto const csv = emit_csv( report );
  if ( flags.out.empty() )
  {
    out << csv;
  }
  else
  {
    write_file( flags.out, csv );
  }
  if ( !flags.svg.empty() )
  {
    write_file( flags.svg, emit_plot_svg( report ) );
  }
  if ( !flags.table.empty() )
  {
    write_file( flags.table, emit_plot_table( report ) );
  }
  return ok;
}

int cmd_oracle( oracle_flags const& flags, std::ostream& out )
{
  auto const target = resolve_target( flags.target, flags.inputs );
  auto const result = minimal_gates( target, flags.max_gates, flags.budget );
  if ( result.witness )
  {
    if ( !flags.export_json.empty() )
    {
      write_file( flags.export_json, export_json( *result.witness ) + "\n" );
    }
    if ( !flags.export_dot.empty() )
    {
      write_file( flags.export_dot, export_dot( *result.witness ) );
    }
  }
  out << to_json( result ) << '\n';
  return ok;
}

int cmd_show( show_flags const& flags, std::ostream& out )
{
  auto const genome = parse_json( read_file( flags.netlist ) );
  auto const table = truth_table_of( genome );
  out << table.to_bits() << '\n';
  if ( !flags.target.empty() )
  {
    auto const f = fitness( genome, resolve_target( flags.target, std::nullopt ) );
    out << "fitness " << f.matches << '/' << f.rows << '\n';
  }
  if ( flags.dot )
  {
    out << export_dot( genome );
  }
  if ( !flags.export_dot.empty() )
  {
    write_file( flags.export_dot, export_dot( genome ) );
  }
  return ok;
}

} // namespace

int run( std::vector<std::string> const& args, std::ostream& out, std::ostream& err )
{
  CLI::App app{ "Evolve, enumerate and inspect NAND-gate circuits" , "nandgen" };
  app.require_subcommand( 1 );

  evolve_flags ev;
  auto* evolve = app.add_subcommand( "evolve", "Evolve a circuit for one target with the genetic algorithm" );
  evolve->add_option( "--target", ev.target, "and|or|nor|xor|xnor|nand|tt:BITS (row i = inputs as bits of i, input 0 LSB)" )
      ->required();
  evolve->add_option( "--inputs", ev.inputs, "Number of external inputs (must match the target)" )
      ->check( CLI::Range( 1u, max_table_inputs ) );
  evolve->add_option( "--gates", ev.gates, "Gates per circuit (presets default to their minimal size)" )
      ->check( CLI::PositiveNumber );
  evolve->add_option( "--pop", ev.pop, "Population size" )->check( CLI::Range( 2u, 1u << 24 ) );
  evolve->add_option( "--mutation", ev.mutation, "Per-gene mutation probability" )->check( CLI::Range( 0.0, 1.0 ) );
  evolve->add_option( "--max-gen", ev.max_gen, "Generation cap" );
  evolve->add_option( "--seed", ev.seed, "Random seed" );
  evolve->add_option( "--export-json", ev.export_json, "Also write the netlist JSON to PATH" );
  evolve->add_option( "--export-dot", ev.export_dot, "Write a Graphviz rendering to PATH" );
  evolve->add_flag( "--trace", ev.trace, "Emit generation,best_fitness,mean_fitness CSV on stderr" );

  bench_flags bf;
  auto* bench = app.add_subcommand( "bench", "Run a batch of seeded evolutions and report generation statistics" );
  auto* spec_opt = bench->add_option( "--spec", bf.spec, "Experiment spec JSON" );
  auto* defaults_opt = bench->add_flag( "--paper-defaults", bf.paper_defaults,
                                        "AND/2, OR/3, NOR/4, XOR/4, XNOR/5 gates, population 10, 10 runs" );
  spec_opt->excludes( defaults_opt );
  bench->add_option( "--seed", bf.seed, "Base seed (run i uses seed + i)" );
  bench->add_option( "--runs", bf.runs, "Runs per entry" )->check( CLI::PositiveNumber );
  bench->add_option( "--pop", bf.pop, "Population size" )->check( CLI::Range( 2u, 1u << 24 ) );
  bench->add_option( "--mutation", bf.mutation, "Per-gene mutation probability" )->check( CLI::Range( 0.0, 1.0 ) );
  bench->add_option( "--max-gen", bf.max_gen, "Generation cap" );
  bench->add_option( "--out", bf.out, "CSV output path (default stdout)" );
  bench->add_option( "--svg", bf.svg, "Bar chart of mean generations" );
  bench->add_option( "--table", bf.table, "Tab-separated mean/stddev table" );
  bench->add_option( "--threads", bf.threads, "Worker threads (0 = hardware concurrency)" );

  oracle_flags of;
  auto* oracle = app.add_subcommand( "oracle", "Exhaustively find the smallest NAND circuit for a target" );
  oracle->add_option( "--target", of.target, "and|or|nor|xor|xnor|nand|tt:BITS" )->required();
  oracle->add_option( "--inputs", of.inputs, "Number of external inputs (must match the target)" )
      ->check( CLI::Range( 1u, max_table_inputs ) );
  oracle->add_option( "--max-gates", of.max_gates, "Largest gate count to search" )->check( CLI::PositiveNumber );
  oracle->add_option( "--budget", of.budget, "Maximum genomes per gate count" );
  oracle->add_option( "--seed", "Accepted for uniformity; the search is deterministic" );
  oracle->add_option( "--export-json", of.export_json, "Write the witness netlist to PATH" );
  oracle->add_option( "--export-dot", of.export_dot, "Write a Graphviz rendering of the witness to PATH" );

  show_flags sf;
  auto* show = app.add_subcommand( "show", "Print the truth table of a netlist" );
  show->add_option( "--netlist", sf.netlist, "Netlist JSON path" )->required();
  show->add_option( "--target", sf.target, "Also report fitness against this target" );
  show->add_flag( "--dot", sf.dot, "Print Graphviz DOT after the truth table" );
  show->add_option( "--export-dot", sf.export_dot, "Write Graphviz DOT to PATH" );

  try
  {
    std::vector<std::string> reversed( args.rbegin(), args.rend() );
    app.parse( reversed );
  }
  catch ( CLI::CallForHelp const& )
  {
    out << app.help();
    return ok;
  }
  catch ( CLI::CallForAllHelp const& )
  {
    out << app.help( "", CLI::AppFormatMode::All );
    return ok;
  }
  catch ( CLI::ParseError const& e )
  {
    err << "error: " << e.what() << "\n\n" << app.help();
    return usage;
  }

  try
  {
    if ( evolve->parsed() )
    {
      return cmd_evolve( ev, out, err );
    }
    if ( bench->parsed() )
    {
      return cmd_bench( bf, out );
    }
    if ( oracle->parsed() )
    {
      return cmd_oracle( of, out );
    }
    return cmd_show( sf, out );
  }
  catch ( cli_failure const& f )
  {
    err << "error: " << f.message << '\n';
    return f.code;
  }
  catch ( capacity_error const& e )
  {
    err << "error: " << e.what() << '\n';
    return over_budget;
  }
  catch ( error const& e )
  {
    err << "error: " << e.what() << '\n';
    return data_format;
  }
}

} // namespace nandgen::cli

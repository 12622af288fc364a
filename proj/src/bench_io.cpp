#include <nandgen/bench.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace nandgen
{

using json = nlohmann::json;

std::string format_number( double value )
{
  char buffer[64];
  auto const result = std::to_chars( buffer, buffer + sizeof( buffer ), value );
  return std::string( buffer, result.ptr );
}

namespace
{

[[noreturn]] void spec_error( std::string const& where, std::string const& what )
{
  throw format_error( "experiment spec at " + where + ": " + what );
}

std::uint64_t read_unsigned( json const& object, char const* key, std::string const& where, std::uint64_t fallback,
                             std::uint64_t minimum = 0, std::uint64_t maximum = std::numeric_limits<std::uint64_t>::max() )
{
  if ( !object.contains( key ) )
  {
    return fallback;
  }
  auto const& value = object[key];
  auto const path = where + "/" + key;
  if ( !value.is_number_unsigned() )
  {
    spec_error( path, "expected a non-negative integer" );
  }
  auto const v = value.get<std::uint64_t>();
  if ( v < minimum || v > maximum )
  {
    spec_error( path, "value " + std::to_string( v ) + " outside [" + std::to_string( minimum ) + ", " +
                          std::to_string( maximum ) + "]" );
  }
  return v;
}

} // namespace

experiment_spec parse_experiment_spec( std::string_view text )
{
  json doc;
  try
  {
    doc = json::parse( text.begin(), text.end() );
  }
  catch ( json::parse_error const& e )
  {
    throw format_error( "experiment spec syntax error at byte " + std::to_string( e.byte ) + ": " + e.what() );
  }
  if ( !doc.is_object() || !doc.contains( "entries" ) || !doc["entries"].is_array() )
  {
    spec_error( "/entries", "expected an array of entries" );
  }
  for ( auto const& [key, _] : doc.items() )
  {
    if ( key != "entries" )
    {
      spec_error( "/" + key, "unexpected field" );
    }
  }

  static constexpr std::string_view known[] = { "target",    "num_gates", "population_size", "mutation_rate",
                                                "runs",      "base_seed", "max_generations" };
  auto const u32_max = std::numeric_limits<std::uint32_t>::max();

  experiment_spec spec;
  auto const& list = doc["entries"];
  for ( std::size_t i = 0; i < list.size(); ++i )
  {
    auto const where = "/entries/" + std::to_string( i );
    auto const& item = list[i];
    if ( !item.is_object() )
    {
      spec_error( where, "expected an object" );
    }
    for ( auto const& [key, _] : item.items() )
    {
      if ( std::find( std::begin( known ), std::end( known ), key ) == std::end( known ) )
      {
        spec_error( where + "/" + key, "unexpected field" );
      }
    }
    if ( !item.contains( "target" ) || !item["target"].is_string() )
    {
      spec_error( where + "/target", "expected a preset name or tt:<bits>" );
    }

    experiment_entry entry;
    entry.label = item["target"].get<std::string>();
    try
    {
      entry.target = parse_target( entry.label );
    }
    catch ( error const& e )
    {
      spec_error( where + "/target", e.what() );
    }

    auto const preset_gates = preset_gate_count( entry.label );
    if ( !item.contains( "num_gates" ) && !preset_gates )
    {
      spec_error( where + "/num_gates", "required for truth-table literals" );
    }
    entry.num_gates = static_cast<std::uint32_t>( read_unsigned( item, "num_gates", where, preset_gates.value_or( 1 ), 1, u32_max ) );
    entry.population_size =
        static_cast<std::uint32_t>( read_unsigned( item, "population_size", where, entry.population_size, 2, u32_max ) );
    entry.runs = static_cast<std::uint32_t>( read_unsigned( item, "runs", where, entry.runs, 1, u32_max ) );
    entry.base_seed = read_unsigned( item, "base_seed", where, entry.base_seed );
    entry.max_generations = read_unsigned( item, "max_generations", where, entry.max_generations );
    if ( item.contains( "mutation_rate" ) )
    {
      auto const& rate = item["mutation_rate"];
      if ( !rate.is_number() || rate.get<double>() < 0.0 || rate.get<double>() > 1.0 )
      {
        spec_error( where + "/mutation_rate", "expected a number in [0, 1]" );
      }
      entry.mutation_millionths = static_cast<std::uint32_t>( std::llround( rate.get<double>() * rate_denominator ) );
    }
    spec.entries.push_back( std::move( entry ) );
  }
  return spec;
}

namespace
{

std::string mutation_text( experiment_entry const& entry )
{
  return format_number( static_cast<double>( entry.mutation_millionths ) / rate_denominator );
}

} // namespace

std::string emit_csv( experiment_report const& report )
{
  std::ostringstream out;
  out << "kind,target,num_gates,population_size,mutation_rate,seed,run_index,solved,generations,distinct_key,"
         "mean,median,stddev,min,max,solve_count,exhausted_count\n";
  for ( auto const& entry : report.entries )
  {
    auto const& e = entry.entry;
    for ( auto const& row : entry.rows )
    {
      out << "run," << e.label << ',' << e.num_gates << ',' << e.population_size << ',' << mutation_text( e ) << ','
          << row.seed << ',' << row.run_index << ',' << ( row.solved ? 1 : 0 ) << ',' << row.generations << ','
          << row.distinct_key << ",,,,,,,\n";
    }
  }
  for ( auto const& entry : report.entries )
  {
    auto const& e = entry.entry;
    out << "summary," << e.label << ',' << e.num_gates << ',' << e.population_size << ',' << mutation_text( e ) << ','
        << e.base_seed << ",,,,,";
    if ( entry.stats )
    {
      auto const& s = *entry.stats;
      out << format_number( s.mean ) << ',' << format_number( s.median ) << ',' << format_number( s.stddev ) << ','
          << s.min << ',' << s.max;
    }
    else
    {
      out << ",,,,";
    }
    out << ',' << entry.solve_count << ',' << entry.exhausted_count << '\n';
  }
  return out.str();
}

std::string emit_plot_table( experiment_report const& report )
{
  std::ostringstream out;
  out << "label\tnum_gates\tpopulation_size\tmean\tstddev\n";
  for ( auto const& entry : report.entries )
  {
    out << entry.entry.label << '\t' << entry.entry.num_gates << '\t' << entry.entry.population_size << '\t';
    if ( entry.stats )
    {
      out << format_number( entry.stats->mean ) << '\t' << format_number( entry.stats->stddev );
    }
    else
    {
      out << "-\t-";
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_plot_svg( experiment_report const& report )
{
  constexpr int bar_width = 48;
  constexpr int gap = 32;
  constexpr int left = 64;
  constexpr int top = 40;
  constexpr int plot_height = 240;
  int const count = static_cast<int>( report.entries.size() );
  int const width = left + count * ( bar_width + gap ) + gap;
  int const height = top + plot_height + 60;

  double scale_max = 1.0;
  for ( auto const& entry : report.entries )
  {
    if ( entry.stats )
    {
      scale_max = std::max( scale_max, entry.stats->mean + entry.stats->stddev );
    }
  }
  auto const y_of = [&]( double v ) { return top + plot_height - v / scale_max * plot_height; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << ' ' << height << "\">\n";
  out << "  <text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << "Mean generations to solution</text>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_height
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top + plot_height << "\" x2=\"" << width - gap / 2 << "\" y2=\""
      << top + plot_height << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << left - 6 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
      << "font-size=\"10\">" << format_number( scale_max ) << "</text>\n";
  out << "  <text x=\"" << left - 6 << "\" y=\"" << top + plot_height << "\" text-anchor=\"end\" "
      << "font-family=\"sans-serif\" font-size=\"10\">0</text>\n";

  for ( int i = 0; i < count; ++i )
  {
    auto const& entry = report.entries[i];
    int const x = left + gap + i * ( bar_width + gap );
    double const mean = entry.stats ? entry.stats->mean : 0.0;
    double const y = y_of( mean );
    out << "  <rect x=\"" << x << "\" y=\"" << format_number( y ) << "\" width=\"" << bar_width << "\" height=\""
        << format_number( top + plot_height - y ) << "\" fill=\"#4c72b0\"><title>" << entry.entry.label
        << " mean=" << format_number( mean ) << "</title></rect>\n";
    if ( entry.stats && entry.stats->stddev > 0.0 )
    {
      int const cx = x + bar_width / 2;
      out << "  <line x1=\"" << cx << "\" y1=\"" << format_number( y_of( mean + entry.stats->stddev ) ) << "\" x2=\""
          << cx << "\" y2=\"" << format_number( y_of( std::max( 0.0, mean - entry.stats->stddev ) ) )
          << "\" stroke=\"black\"/>\n";
    }
    out << "  <text x=\"" << x + bar_width / 2 << "\" y=\"" << top + plot_height + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << entry.entry.label << "</text>\n";
    out << "  <text x=\"" << x + bar_width / 2 << "\" y=\"" << top + plot_height + 30
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">G=" << entry.entry.num_gates
        << " P=" << entry.entry.population_size << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace nandgen

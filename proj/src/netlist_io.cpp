#include <nandgen/netlist.hpp>

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace nandgen
{

using json = nlohmann::json;

namespace
{

nlohmann::ordered_json source_to_json( input_source src )
{
  nlohmann::ordered_json out;
  out["type"] = src.kind == source_kind::external ? "external" : "gate";
  out["index"] = src.index;
  return out;
}

[[noreturn]] void fail_at( std::string const& where, std::string const& what )
{
  throw format_error( "netlist JSON at " + where + ": " + what );
}

std::uint32_t read_index( json const& value, std::string const& where )
{
  if ( !value.is_number_unsigned() )
  {
    fail_at( where, "expected a non-negative integer" );
  }
  auto const v = value.get<std::uint64_t>();
  if ( v > std::numeric_limits<std::uint32_t>::max() )
  {
    fail_at( where, "index out of range" );
  }
  return static_cast<std::uint32_t>( v );
}

void reject_unknown_keys( json const& object, std::initializer_list<std::string_view> allowed, std::string const& where )
{
  for ( auto const& [key, _] : object.items() )
  {
    if ( std::find( allowed.begin(), allowed.end(), key ) == allowed.end() )
    {
      fail_at( where, "unexpected field \"" + key + "\"" );
    }
  }
}

input_source read_source( json const& value, std::string const& where )
{
  if ( !value.is_object() )
  {
    fail_at( where, "expected an object with \"type\" and \"index\"" );
  }
  reject_unknown_keys( value, { "type", "index" }, where );
  if ( !value.contains( "type" ) || !value["type"].is_string() )
  {
    fail_at( where + "/type", "expected \"external\" or \"gate\"" );
  }
  if ( !value.contains( "index" ) )
  {
    fail_at( where + "/index", "missing" );
  }
  auto const type = value["type"].get<std::string>();
  auto const index = read_index( value["index"], where + "/index" );
  if ( type == "external" )
  {
    return input_source::external( index );
  }
  if ( type == "gate" )
  {
    return input_source::gate( index );
  }
  fail_at( where + "/type", "unknown source type \"" + type + "\"" );
}

} // namespace

std::string export_json( nand_genome const& genome )
{
  auto gates = nlohmann::ordered_json::array();
  for ( auto const& gate : genome.gates() )
  {
    gates.push_back( nlohmann::ordered_json::array( { source_to_json( gate.a ), source_to_json( gate.b ) } ) );
  }
  nlohmann::ordered_json doc;
  doc["inputs"] = genome.num_inputs();
  doc["gates"] = std::move( gates );
  return doc.dump();
}

nand_genome parse_json( std::string_view text )
{
  json doc;
  try
  {
    doc = json::parse( text.begin(), text.end() );
  }
  catch ( json::parse_error const& e )
  {
    throw format_error( "netlist JSON syntax error at byte " + std::to_string( e.byte ) + ": " + e.what() );
  }

  if ( !doc.is_object() )
  {
    fail_at( "/", "expected an object" );
  }
  reject_unknown_keys( doc, { "inputs", "gates" }, "/" );
  if ( !doc.contains( "inputs" ) )
  {
    fail_at( "/inputs", "missing" );
  }
  auto const num_inputs = read_index( doc["inputs"], "/inputs" );
  if ( !doc.contains( "gates" ) || !doc["gates"].is_array() )
  {
    fail_at( "/gates", "expected an array of gates" );
  }

  std::vector<nand_gate> gates;
  auto const& list = doc["gates"];
  for ( std::size_t i = 0; i < list.size(); ++i )
  {
    auto const where = "/gates/" + std::to_string( i );
    auto const& entry = list[i];
    if ( !entry.is_array() || entry.size() != 2 )
    {
      fail_at( where, "expected a pair of sources" );
    }
    gates.push_back( { read_source( entry[0], where + "/0" ), read_source( entry[1], where + "/1" ) } );
  }

  try
  {
    return nand_genome( num_inputs, std::move( gates ) );
  }
  catch ( structural_error const& e )
  {
    throw structural_error( std::string( "netlist JSON at /gates: " ) + e.what() );
  }
}

std::string export_dot( nand_genome const& genome )
{
  std::ostringstream out;
  out << "digraph nand_circuit {\n";
  out << "  rankdir=LR;\n";
  for ( std::uint32_t k = 0; k < genome.num_inputs(); ++k )
  {
    out << "  x" << k << " [shape=circle, label=\"x" << k << "\"];\n";
  }
  auto const last = genome.num_gates() - 1;
  for ( std::size_t j = 0; j < genome.num_gates(); ++j )
  {
    out << "  g" << j << " [shape=box, label=\"NAND g" << j << "\"";
    if ( j == last )
    {
      out << ", peripheries=2, xlabel=\"output\"";
    }
    out << "];\n";
  }
  auto const name = []( input_source src ) {
    return ( src.kind == source_kind::external ? "x" : "g" ) + std::to_string( src.index );
  };
  for ( std::size_t j = 0; j < genome.num_gates(); ++j )
  {
    auto const& gate = genome.gate( j );
    out << "  " << name( gate.a ) << " -> g" << j << ";\n";
    out << "  " << name( gate.b ) << " -> g" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace nandgen

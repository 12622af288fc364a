#include <nandgen/cli.hpp>
#include <nandgen/netlist.hpp>

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace nandgen;
namespace fs = std::filesystem;

namespace
{

struct result
{
  int code;
  std::string out;
  std::string err;
};

result run( std::vector<std::string> args )
{
  std::ostringstream out, err;
  int const code = cli::run( args, out, err );
  return { code, out.str(), err.str() };
}

class scratch_dir
{
public:
  scratch_dir()
  {
    path_ = fs::temp_directory_path() / ( "nandgen_cli_test_" + std::to_string( ::getpid() ) );
    fs::create_directories( path_ );
  }
  ~scratch_dir() { fs::remove_all( path_ ); }
  std::string file( std::string const& name ) const { return ( path_ / name ).string(); }

private:
  fs::path path_;
};

std::string slurp( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit( std::string const& path, std::string const& text )
{
  std::ofstream( path, std::ios::binary ) << text;
}

} // namespace

TEST_CASE( "evolve prints a netlist that realizes the target" )
{
  auto const r = run( { "evolve", "--target", "and", "--gates", "2", "--pop", "10", "--seed", "1" } );
  CHECK( r.code == 0 );
  CHECK( truth_table_of( parse_json( r.out ) ).to_bits() == "0001" );
  CHECK( r.err.find( "solved at generation" ) != std::string::npos );

  auto const x = run( { "evolve", "--target", "tt:0110", "--gates", "4", "--pop", "10", "--seed", "7" } );
  CHECK( x.code == 0 );
  CHECK( truth_table_of( parse_json( x.out ) ).to_bits() == "0110" );
}

TEST_CASE( "evolve exits 2 when the generation cap is hit" )
{
  bool hit = false;
  for ( int seed = 1; seed < 200 && !hit; ++seed )
  {
    auto const r = run( { "evolve", "--target", "and", "--gates", "2", "--max-gen", "0", "--seed", std::to_string( seed ) } );
    if ( r.code == 2 )
    {
      hit = true;
      CHECK( r.err.find( "best fitness" ) != std::string::npos );
      CHECK_NOTHROW( parse_json( r.out ) );
    }
    else
    {
      REQUIRE( r.code == 0 );
    }
  }
  CHECK( hit );
}

TEST_CASE( "evolve exports and traces" )
{
  scratch_dir dir;
  auto const r = run( { "evolve", "--target", "xor", "--seed", "3", "--trace", "--export-json", dir.file( "x.json" ),
                        "--export-dot", dir.file( "x.dot" ) } );
  REQUIRE( r.code == 0 );
  CHECK( parse_json( slurp( dir.file( "x.json" ) ) ) == parse_json( r.out ) );
  CHECK( slurp( dir.file( "x.dot" ) ).starts_with( "digraph" ) );
  CHECK( r.err.starts_with( "generation,best_fitness,mean_fitness\n0," ) );

  auto const shown = run( { "show", "--netlist", dir.file( "x.json" ), "--target", "xor", "--dot" } );
  CHECK( shown.code == 0 );
  CHECK( shown.out.starts_with( "0110\nfitness 4/4\ndigraph" ) );
}

TEST_CASE( "evolve output is byte-identical for a fixed seed" )
{
  std::vector<std::string> args{ "evolve", "--target", "xnor", "--seed", "11", "--trace" };
  auto const a = run( args );
  auto const b = run( args );
  CHECK( a.code == b.code );
  CHECK( a.out == b.out );
  CHECK( a.err == b.err );
}

TEST_CASE( "usage errors exit 64" )
{
  CHECK( run( {} ).code == 64 );
  CHECK( run( { "evolve" } ).code == 64 );
  CHECK( run( { "evolve", "--target", "and", "--bogus" } ).code == 64 );
  CHECK( run( { "evolve", "--target", "and", "--pop", "ten" } ).code == 64 );
  CHECK( run( { "evolve", "--target", "and", "--pop", "1" } ).code == 64 );
  CHECK( run( { "evolve", "--target", "and", "--mutation", "1.5" } ).code == 64 );
  CHECK( run( { "evolve", "--target", "tt:0110" } ).code == 64 );
  CHECK( run( { "frobnicate" } ).code == 64 );
  CHECK( run( { "bench" } ).code == 64 );
  CHECK( run( { "bench", "--paper-defaults", "--spec", "x.json" } ).code == 64 );
  CHECK( run( { "show" } ).code == 64 );
  CHECK( run( { "--help" } ).code == 0 );
}

TEST_CASE( "data errors exit 65" )
{
  CHECK( run( { "evolve", "--target", "tt:011" } ).code == 65 );
  CHECK( run( { "evolve", "--target", "mux" } ).code == 65 );
  CHECK( run( { "evolve", "--target", "and", "--inputs", "3" } ).code == 65 );
  CHECK( run( { "oracle", "--target", "tt:01x0" } ).code == 65 );

  scratch_dir dir;
  spit( dir.file( "bad.json" ), R"({"inputs":2,"gates":[[{"type":"gate","index":0},{"type":"external","index":0}]]})" );
  auto const r = run( { "show", "--netlist", dir.file( "bad.json" ) } );
  CHECK( r.code == 65 );
  CHECK( r.err.find( "gate 0" ) != std::string::npos );

  spit( dir.file( "spec.json" ), R"({"entries":[{"target":"and","runs":"x"}]})" );
  auto const s = run( { "bench", "--spec", dir.file( "spec.json" ) } );
  CHECK( s.code == 65 );
  CHECK( s.err.find( "/entries/0/runs" ) != std::string::npos );
}

TEST_CASE( "unreadable files exit 66" )
{
  CHECK( run( { "show", "--netlist", "/nonexistent/and.json" } ).code == 66 );
  CHECK( run( { "bench", "--spec", "/nonexistent/spec.json" } ).code == 66 );
}

TEST_CASE( "oracle" )
{
  auto const x = run( { "oracle", "--target", "xnor", "--max-gates", "6" } );
  REQUIRE( x.code == 0 );
  auto const doc = nlohmann::json::parse( x.out );
  CHECK( doc["minimal_gates"] == 5 );
  CHECK( truth_table_of( parse_json( doc["witness"].dump() ) ).to_bits() == "1001" );

  auto const parity = run( { "oracle", "--target", "tt:01101001", "--max-gates", "2" } );
  REQUIRE( parity.code == 0 );
  CHECK( nlohmann::json::parse( parity.out )["result"] == "none up to budget" );

  auto const big = run( { "oracle", "--target", "and", "--max-gates", "7" } );
  CHECK( big.code == 3 );
  CHECK( big.err.find( "budget" ) != std::string::npos );
  CHECK( run( { "oracle", "--target", "and", "--max-gates", "3", "--budget", "100" } ).code == 3 );
}

TEST_CASE( "show prints the truth table" )
{
  scratch_dir dir;
  spit( dir.file( "and.json" ), R"({"inputs":2,"gates":[[{"type":"external","index":0},{"type":"external","index":1}],
                                   [{"type":"gate","index":0},{"type":"gate","index":0}]]})" );
  auto const r = run( { "show", "--netlist", dir.file( "and.json" ), "--export-dot", dir.file( "and.dot" ) } );
  CHECK( r.code == 0 );
  CHECK( r.out == "0001\n" );
  CHECK( slurp( dir.file( "and.dot" ) ).find( "g1 [shape=box" ) != std::string::npos );
}

TEST_CASE( "bench writes deterministic CSV" )
{
  scratch_dir dir;
  auto const a = run( { "bench", "--paper-defaults", "--seed", "42", "--out", dir.file( "a.csv" ), "--svg",
                        dir.file( "a.svg" ), "--table", dir.file( "a.tsv" ) } );
  REQUIRE( a.code == 0 );
  auto const b = run( { "bench", "--paper-defaults", "--seed", "42", "--out", dir.file( "b.csv" ), "--threads", "3" } );
  REQUIRE( b.code == 0 );
  auto const csv = slurp( dir.file( "a.csv" ) );
  CHECK( csv == slurp( dir.file( "b.csv" ) ) );
  CHECK( std::count( csv.begin(), csv.end(), '\n' ) == 1 + 50 + 5 );
  CHECK( slurp( dir.file( "a.svg" ) ).starts_with( "<svg" ) );

  spit( dir.file( "s.json" ), R"({"entries":[{"target":"or","runs":30,"base_seed":5},{"target":"tt:0001","num_gates":2,"runs":30}]})" );
  auto const s = run( { "bench", "--spec", dir.file( "s.json" ) } );
  REQUIRE( s.code == 0 );
  CHECK( std::count( s.out.begin(), s.out.end(), '\n' ) == 1 + 60 + 2 );
}

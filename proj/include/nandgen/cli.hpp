#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nandgen::cli
{

enum exit_code : int
{
  ok = 0,
  exhausted_run = 2,
  over_budget = 3,
  usage = 64,
  data_format = 65,
  no_input = 66,
  cant_create = 73
};

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace nandgen::cli

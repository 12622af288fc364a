#pragma once

#include <stdexcept>
#include <string>

namespace nandgen
{

/// Base class of every error raised by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Dangling, forward or self reference in a genome.
class structural_error : public error
{
public:
  using error::error;
};

/// Mismatched input counts, genome shapes or assignment lengths.
class arity_error : public error
{
public:
  using error::error;
};

/// A request exceeds a size limit (truth-table width, enumeration budget).
class capacity_error : public error
{
public:
  using error::error;
};

/// Malformed text input (JSON netlists, truth-table literals, experiment specs).
class format_error : public error
{
public:
  using error::error;
};

/// Invalid run parameters.
class config_error : public error
{
public:
  using error::error;
};

} // namespace nandgen

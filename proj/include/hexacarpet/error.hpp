#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hexacarpet {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

/// Requested level exceeds the configured cap.
class CapacityError : public Error
{
  public:
	using Error::Error;
};

/// A level, simplex or vertex set that the operation needs is absent or invalid.
class InvalidArgument : public Error
{
  public:
	using Error::Error;
};

/// Iterative solve stopped before reaching the requested residual.
class SolverError : public Error
{
  public:
	SolverError(const std::string& what, double residual, int iterations)
		: Error(what), residual_(residual), iterations_(iterations)
	{
	}

	double residual() const noexcept { return residual_; }
	int iterations() const noexcept { return iterations_; }

  private:
	double residual_;
	int iterations_;
};

/// A function on edges is not a flow between the stated sets. Carries the
/// offending vertices.
class FlowError : public Error
{
  public:
	FlowError(const std::string& what, std::vector<std::size_t> witnesses)
		: Error(what), witnesses_(std::move(witnesses))
	{
	}

	const std::vector<std::size_t>& witnesses() const noexcept { return witnesses_; }

  private:
	std::vector<std::size_t> witnesses_;
};

/// A constructed graph violates a structural postcondition.
class StructureError : public Error
{
  public:
	using Error::Error;
};

} // namespace hexacarpet

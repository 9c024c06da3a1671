// Error types raised by the library. Each corresponds to a documented
// failure mode of one operation; everything else is a total function.

#pragma once

#include <stdexcept>
#include <string>

namespace marketfield {

struct ZeroRadius : std::domain_error {
  explicit ZeroRadius(const std::string& m) : std::domain_error(m) {}
};

struct OutOfDomain : std::domain_error {
  explicit OutOfDomain(const std::string& m) : std::domain_error(m) {}
};

struct InvalidStep : std::invalid_argument {
  explicit InvalidStep(const std::string& m) : std::invalid_argument(m) {}
};

struct OnFilament : std::domain_error {
  explicit OnFilament(const std::string& m) : std::domain_error(m) {}
};

struct NonpositiveRadius : std::domain_error {
  explicit NonpositiveRadius(const std::string& m) : std::domain_error(m) {}
};

struct InvalidCutoff : std::invalid_argument {
  explicit InvalidCutoff(const std::string& m) : std::invalid_argument(m) {}
};

struct GridMismatch : std::invalid_argument {
  explicit GridMismatch(const std::string& m) : std::invalid_argument(m) {}
};

struct TooFewSamples : std::invalid_argument {
  explicit TooFewSamples(const std::string& m) : std::invalid_argument(m) {}
};

struct TooFewSlices : std::invalid_argument {
  explicit TooFewSlices(const std::string& m) : std::invalid_argument(m) {}
};

struct IncompleteGrid : std::invalid_argument {
  explicit IncompleteGrid(const std::string& m) : std::invalid_argument(m) {}
};

struct OpenContour : std::invalid_argument {
  explicit OpenContour(const std::string& m) : std::invalid_argument(m) {}
};

struct MeshBoundaryMismatch : std::invalid_argument {
  explicit MeshBoundaryMismatch(const std::string& m) : std::invalid_argument(m) {}
};

struct ZeroUnemployment : std::domain_error {
  explicit ZeroUnemployment(const std::string& m) : std::domain_error(m) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& m) : std::runtime_error(m), line(line_) {}
};

struct UnknownKey : std::runtime_error {
  std::string key;
  explicit UnknownKey(const std::string& k)
      : std::runtime_error("unknown configuration key: " + k), key(k) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace marketfield

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dedonder/numeric/grid.hpp"
#include "dedonder/prolongation.hpp"

namespace dedonder {

// Positioned diagnostic; what() is "line:col: error: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct MetricDecl {
  std::string name;
  std::vector<std::vector<Rational>> table;  // symmetric, invertible
  bool operator==(const MetricDecl&) const = default;
};

struct SkewDecl {
  CoefficientKey key;  // Q^{i J}_a, J canonical
  Expr value;
  bool operator==(const SkewDecl&) const = default;
};

struct SectionDecl {
  std::string name;
  PolynomialSection section;
};

struct EvolveParams {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 10;
  bool operator==(const EvolveParams&) const = default;
};

struct ProblemSpec {
  JetConfig cfg;
  std::vector<MetricDecl> metrics;
  Expr lagrangian;
  std::string lagrangian_source;  // not part of equality
  std::vector<ProjectableField> fields;
  std::vector<SkewDecl> skew;
  std::vector<SectionDecl> sections;
  std::optional<GridSpec> grid;
  std::optional<EvolveParams> evolve;

  SkewPerturbation perturbation() const;
  const ProjectableField* field(const std::string& name) const;
};

bool operator==(const ProblemSpec& a, const ProblemSpec& b);

// Throws ParseError for syntax and semantic errors alike.
ProblemSpec parse_problem(const std::string& text);

// Canonical text that parses back to an equal spec.
std::string render_problem(const ProblemSpec& spec);

}  // namespace dedonder

#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace hirepath {

// Flat column store feeding the regression layer. Categorical columns hold
// integer codes stored as doubles.
struct ColumnTable {
  std::size_t n = 0;
  std::map<std::string, std::vector<double>> columns;

  void add(const std::string& name, std::vector<double> values);
  const std::vector<double>& get(const std::string& name) const;
  bool has(const std::string& name) const { return columns.count(name) != 0; }
};

// One design term: a product of factors, each either continuous or
// categorical. A categorical factor expands to one dummy per non-reference
// level (reference = smallest level value); a multi-factor term takes the
// elementwise product across expansions.
struct Factor {
  std::string name;
  bool categorical = false;
};

struct Term {
  std::vector<Factor> factors;

  static Term continuous(const std::string& name) { return {{{name, false}}}; }
  static Term categorical(const std::string& name) { return {{{name, true}}}; }
  static Term interaction(std::initializer_list<Factor> fs) { return {fs}; }

  std::string label() const;
};

// "x" -> continuous, "C(x)" -> categorical, "a:b" / "a:C(b)" -> interaction
Term parse_term(const std::string& text);

struct DesignMatrix {
  Eigen::MatrixXd X;
  std::vector<std::string> col_names;
  Eigen::VectorXd y;

  std::size_t n() const { return static_cast<std::size_t>(X.rows()); }
  int column(const std::string& name) const;  // -1 if absent
};

struct BuildOptions {
  bool intercept = true;
};

// Column order is deterministic: intercept, then terms in the given order,
// categorical levels ascending. Throws MissingCovariate for unknown names
// and ConstantColumn for degenerate non-intercept columns.
DesignMatrix build_design(const ColumnTable& table, const std::vector<Term>& terms,
                          const std::string& response, const BuildOptions& opts = {});

}  // namespace hirepath

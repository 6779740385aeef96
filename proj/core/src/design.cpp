#include "hirepath/design.hpp"

#include <algorithm>
#include <set>

#include "hirepath/errors.hpp"

namespace hirepath {

void ColumnTable::add(const std::string& name, std::vector<double> values) {
  if (n == 0 && columns.empty()) n = values.size();
  if (values.size() != n)
    throw Error("column " + name + " has " + std::to_string(values.size()) +
                " rows, table has " + std::to_string(n));
  columns[name] = std::move(values);
}

const std::vector<double>& ColumnTable::get(const std::string& name) const {
  auto it = columns.find(name);
  if (it == columns.end()) throw MissingCovariate(name);
  return it->second;
}

std::string Term::label() const {
  std::string out;
  for (const Factor& f : factors) {
    if (!out.empty()) out += ':';
    out += f.categorical ? "C(" + f.name + ")" : f.name;
  }
  return out;
}

Term parse_term(const std::string& text) {
  Term term;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t colon = text.find(':', start);
    std::string part = text.substr(start, colon == std::string::npos ? colon : colon - start);
    Factor f;
    if (part.size() > 3 && part.substr(0, 2) == "C(" && part.back() == ')') {
      f.name = part.substr(2, part.size() - 3);
      f.categorical = true;
    } else {
      f.name = part;
    }
    if (f.name.empty()) throw Error("empty factor in term: " + text);
    term.factors.push_back(std::move(f));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  return term;
}

int DesignMatrix::column(const std::string& name) const {
  for (std::size_t i = 0; i < col_names.size(); ++i)
    if (col_names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct ExpandedColumn {
  std::string name;
  std::vector<double> values;
};

// expansions of one factor: identity for continuous, one 0/1 dummy per
// non-reference level for categorical
std::vector<ExpandedColumn> expand_factor(const ColumnTable& table, const Factor& f) {
  const std::vector<double>& col = table.get(f.name);
  if (!f.categorical) return {{f.name, col}};

  std::set<double> levels(col.begin(), col.end());
  if (levels.empty()) throw Error("empty categorical column: " + f.name);
  double reference = *levels.begin();
  std::vector<ExpandedColumn> out;
  for (double level : levels) {
    if (level == reference) continue;
    ExpandedColumn ec;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", level);
    ec.name = f.name + "=" + buf;
    ec.values.reserve(col.size());
    for (double v : col) ec.values.push_back(v == level ? 1.0 : 0.0);
    out.push_back(std::move(ec));
  }
  return out;
}

}  // namespace

DesignMatrix build_design(const ColumnTable& table, const std::vector<Term>& terms,
                          const std::string& response, const BuildOptions& opts) {
  std::vector<ExpandedColumn> cols;
  if (opts.intercept) {
    cols.push_back({"(intercept)", std::vector<double>(table.n, 1.0)});
  }
  for (const Term& term : terms) {
    std::vector<ExpandedColumn> product = expand_factor(table, term.factors[0]);
    for (std::size_t f = 1; f < term.factors.size(); ++f) {
      std::vector<ExpandedColumn> next = expand_factor(table, term.factors[f]);
      std::vector<ExpandedColumn> combined;
      for (const auto& a : product) {
        for (const auto& b : next) {
          ExpandedColumn ec;
          ec.name = a.name + ":" + b.name;
          ec.values.resize(table.n);
          for (std::size_t i = 0; i < table.n; ++i) ec.values[i] = a.values[i] * b.values[i];
          combined.push_back(std::move(ec));
        }
      }
      product = std::move(combined);
    }
    for (auto& ec : product) cols.push_back(std::move(ec));
  }

  for (std::size_t c = opts.intercept ? 1 : 0; c < cols.size(); ++c) {
    const auto& v = cols[c].values;
    if (std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; }))
      throw ConstantColumn(cols[c].name);
  }

  DesignMatrix d;
  d.X.resize(table.n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    d.col_names.push_back(cols[c].name);
    for (std::size_t i = 0; i < table.n; ++i) d.X(i, c) = cols[c].values[i];
  }
  const std::vector<double>& resp = table.get(response);
  d.y = Eigen::Map<const Eigen::VectorXd>(resp.data(), resp.size());
  return d;
}

}  // namespace hirepath

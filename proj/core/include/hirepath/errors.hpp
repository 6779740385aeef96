#pragma once

#include <stdexcept>
#include <string>

namespace hirepath {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// -- corpus --
struct MalformedRow : Error {
  MalformedRow(const std::string& file, std::size_t line, const std::string& reason)
      : Error(file + ":" + std::to_string(line) + ": " + reason),
        file(file), line(line), reason(reason) {}
  std::string file;
  std::size_t line;
  std::string reason;
};

struct DanglingReference : Error {
  explicit DanglingReference(const std::string& id)
      : Error("dangling paper reference: " + id), paper_id(id) {}
  std::string paper_id;
};

struct DuplicateId : Error {
  explicit DuplicateId(const std::string& id) : Error("duplicate id: " + id), id(id) {}
  std::string id;
};

struct EmptyCohort : Error {
  EmptyCohort() : Error("no person survives sample filtering") {}
};

// -- interdisciplinarity --
struct TooFewReferences : Error {
  explicit TooFewReferences(int n)
      : Error("paper has " + std::to_string(n) + " classified references, need >= 5") {}
};
struct NoEligiblePapers : Error {
  NoEligiblePapers() : Error("person has no idr-eligible papers") {}
};

// -- ranking --
struct TooFewNodes : Error {
  TooFewNodes() : Error("placement graph needs at least 2 universities") {}
};
struct SolverDivergence : Error {
  explicit SolverDivergence(const std::string& what) : Error(what) {}
};

// -- deviation --
struct NoReferences : Error {
  NoReferences() : Error("person has no classified references in the Ph.D. window") {}
};
struct NoIncumbents : Error {
  NoIncumbents() : Error("no incumbent faculty at that (university, subfield, year)") {}
};
struct ZeroVector : Error {
  ZeroVector() : Error("cosine distance undefined for a zero vector") {}
};

// -- stats --
struct MissingCovariate : Error {
  explicit MissingCovariate(const std::string& name)
      : Error("unknown covariate: " + name), name(name) {}
  std::string name;
};
struct ConstantColumn : Error {
  explicit ConstantColumn(const std::string& name)
      : Error("column is constant: " + name), name(name) {}
  std::string name;
};
struct Separation : Error {
  Separation() : Error("logistic fit diverges (complete or quasi-separation)") {}
};
struct Collinearity : Error {
  Collinearity() : Error("information matrix is singular") {}
};
struct NonConvergence : Error {
  explicit NonConvergence(int iters)
      : Error("fit did not converge in " + std::to_string(iters) + " iterations") {}
};
struct UnknownVariable : Error {
  explicit UnknownVariable(const std::string& name)
      : Error("variable not in fit: " + name), name(name) {}
  std::string name;
};
struct NoOverlap : Error {
  NoOverlap() : Error("no treated unit matches any control within the caliper") {}
};
struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what) : Error(what) {}
};

// -- synth / report --
struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& what) : Error(what) {}
};
struct UnknownExperiment : Error {
  explicit UnknownExperiment(const std::string& name)
      : Error("unknown experiment: " + name), name(name) {}
  std::string name;
};

}  // namespace hirepath

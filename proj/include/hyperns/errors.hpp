#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperns {

/// Argument outside the domain of a constitutive formula (rho <= 0, theta <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Conserved state without a positive temperature root.
class UnphysicalState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver cell left the admissible box.
class InadmissibleState : public std::runtime_error {
 public:
  InadmissibleState(const std::string& what, long cell) : std::runtime_error(what), cell_(cell) {}
  long cell() const { return cell_; }

 private:
  long cell_;
};

/// Aggregated configuration problems, one entry per offending path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace hyperns

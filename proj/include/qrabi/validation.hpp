#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace qrabi {

enum class ValidationLevel { Fast, Full };

struct ValidationOptions {
  /// Criterion id (or its "C<k>" prefix) whose method-under-test value is
  /// deliberately corrupted; used to check that the harness can fail.
  std::string inject_fault;
};

/// Offset added to the corrupted quantity when a fault is injected.
inline constexpr double kFaultOffset = 0.5;

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::vector<std::string> details;   ///< derived numbers worth recording
  std::vector<std::string> failures;  ///< one line per violated check
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit;
  bool full_only;  ///< skipped by the fast level
  std::function<void(CriterionResult&, const ValidationOptions&)> body;
};

/// The acceptance criteria, in order.
const std::vector<Criterion>& acceptance_criteria();

/// Runs one criterion, timing it; the time limit is part of the pass condition.
CriterionResult run_criterion(const Criterion& criterion, const ValidationOptions& options = {});

std::vector<CriterionResult> run_validation(ValidationLevel level, const ValidationOptions& options = {});

/// Header block stating what the comparisons are measured against.
void print_report_header(std::ostream& os, ValidationLevel level);
void print_result(std::ostream& os, const CriterionResult& result, bool verbose);

}  // namespace qrabi

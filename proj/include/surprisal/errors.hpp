#pragma once

#include <stdexcept>
#include <string>

namespace surprisal {

// Error taxonomy shared across the library.  The CLI maps any `error` to
// exit code 2; decision outcomes (feasible/infeasible) are never exceptions.
enum class errc {
  negative_entry,
  not_normalized,
  empty_input,
  dimension_mismatch,
  dimension_too_small,
  dimension_cap_exceeded,
  reference_not_full_rank,
  negative_alpha,
  invalid_reference_eigenvalue,
  invalid_epsilon,
  invalid_delta,
  out_of_range,
  invalid_curve,
  exact_search_too_large,
  nonpositive_entropy_gap,
  no_convergence,
  complex_roots,
  unknown_suite,
  bad_input_file,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace surprisal

#include "surprisal/errors.hpp"

namespace surprisal {

const char* errc_name(errc code) {
  switch (code) {
    case errc::negative_entry: return "NegativeEntry";
    case errc::not_normalized: return "NotNormalized";
    case errc::empty_input: return "EmptyInput";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::dimension_cap_exceeded: return "DimensionCapExceeded";
    case errc::reference_not_full_rank: return "ReferenceNotFullRank";
    case errc::negative_alpha: return "NegativeAlpha";
    case errc::invalid_reference_eigenvalue: return "InvalidReferenceEigenvalue";
    case errc::invalid_epsilon: return "InvalidEpsilon";
    case errc::invalid_delta: return "InvalidDelta";
    case errc::out_of_range: return "OutOfRange";
    case errc::invalid_curve: return "InvalidCurve";
    case errc::exact_search_too_large: return "ExactSearchTooLarge";
    case errc::nonpositive_entropy_gap: return "NonpositiveEntropyGap";
    case errc::no_convergence: return "NoConvergence";
    case errc::complex_roots: return "ComplexRoots";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::bad_input_file: return "BadInputFile";
  }
  return "UnknownError";
}

}  // namespace surprisal

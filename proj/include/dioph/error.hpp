#ifndef DIOPH_ERROR_HPP
#define DIOPH_ERROR_HPP

#include <map>
#include <stdexcept>
#include <string>

namespace dioph {

// Machine-readable error: stable code string plus free-form context,
// surfaced by the CLI as {code, message, context} JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message,
          std::map<std::string, std::string> context = {})
        : std::runtime_error(message), code_(std::move(code)),
          context_(std::move(context)) {}

    const std::string& code() const { return code_; }
    const std::map<std::string, std::string>& context() const { return context_; }

private:
    std::string code_;
    std::map<std::string, std::string> context_;
};

namespace errc {
inline constexpr const char* invalid_spec = "invalid-spec";
inline constexpr const char* insufficient_depth = "insufficient-depth";
inline constexpr const char* precision_exhausted = "precision-exhausted";
inline constexpr const char* degree_overflow = "degree-overflow";
inline constexpr const char* degree_out_of_range = "degree-out-of-range";
inline constexpr const char* insufficient_candidates = "insufficient-candidates";
inline constexpr const char* insufficient_range = "insufficient-range";
inline constexpr const char* grid_mismatch = "grid-mismatch";
inline constexpr const char* segmentation_failed = "segmentation-failed";
inline constexpr const char* empty_sequence = "empty-sequence";
inline constexpr const char* insufficient_entries = "insufficient-roy-entries";
inline constexpr const char* no_irreducible_candidate = "no-irreducible-candidate";
inline constexpr const char* invalid_config = "invalid-config";
inline constexpr const char* psi_out_of_domain = "psi-out-of-domain";
inline constexpr const char* out_of_range = "out-of-range";
inline constexpr const char* degenerate = "degenerate";
inline constexpr const char* io_error = "io-error";
} // namespace errc

} // namespace dioph

#endif

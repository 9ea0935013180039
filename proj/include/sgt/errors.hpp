#ifndef SGT_ERRORS_HPP
#define SGT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sgt {

// Error categories map onto CLI exit codes: input/validation -> 3,
// resource -> 4, hypothesis -> 2, state/internal -> 1.
enum class errc {
  input,
  validation,
  resource,
  state,
  hypothesis,
};

class Error : public std::runtime_error {
 public:
  Error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

inline Error input_error(const std::string& msg) { return Error(errc::input, msg); }
inline Error validation_error(const std::string& msg) { return Error(errc::validation, msg); }
inline Error resource_error(const std::string& msg) { return Error(errc::resource, msg); }
inline Error state_error(const std::string& msg) { return Error(errc::state, msg); }

}  // namespace sgt

#endif  // SGT_ERRORS_HPP

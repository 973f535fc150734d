#ifndef QRC_SRC_ERROR_HPP
#define QRC_SRC_ERROR_HPP

#include <stdexcept>
#include <string>

#include "qrc/qrc.h"

namespace qrc {

// Exception carrying the status code surfaced at the C boundary.
class Error : public std::runtime_error {
public:
  Error(qrc_status code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  qrc_status code() const noexcept { return code_; }

private:
  qrc_status code_;
};

[[noreturn]] inline void fail(qrc_status code, const std::string &message) {
  throw Error(code, message);
}

inline void require(bool condition, qrc_status code,
                    const std::string &message) {
  if (!condition) fail(code, message);
}

} // namespace qrc

#endif

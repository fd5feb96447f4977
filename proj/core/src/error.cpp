#include "r2d2/error.hpp"

namespace r2d2 {

void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

void require_data(bool condition, const std::string& message) {
  if (!condition) throw DataError(message);
}

}  // namespace r2d2

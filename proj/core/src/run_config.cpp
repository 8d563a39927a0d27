#include "equidist/run_config.hpp"

#include <cstdlib>
#include <string>

#include "equidist/errors.hpp"

namespace equidist {

void RunConfig::validate() const {
  if (bins < 2) throw DomainError("bins must be at least 2");
  if (grid < 2) throw DomainError("grid must be at least 2");
  if (precision < 16) throw DomainError("precision must be at least 16 digits");
  if (budget < 1) throw DomainError("budget must be at least 1");
  if (threads < 1) throw DomainError("threads must be at least 1");
}

RunConfig RunConfig::from_environment() {
  RunConfig config;
  if (const char* raw = std::getenv("EQUIDIST_BUDGET"); raw && *raw) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0)
      throw DomainError(std::string("EQUIDIST_BUDGET is not a positive integer: ") + raw);
    config.budget = value;
  }
  return config;
}

}  // namespace equidist

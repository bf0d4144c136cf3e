#include "sinrg/error.hpp"

namespace sinrg {

void throw_usage(const std::string& what) { throw UsageError(what); }

}  // namespace sinrg

#include "mcform/report.hpp"

namespace mcform {

std::string canonical_dump(const Report& r) { return r.dump(2) + "\n"; }

}  // namespace mcform

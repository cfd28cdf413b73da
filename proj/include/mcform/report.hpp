#ifndef MCFORM_REPORT_HPP
#define MCFORM_REPORT_HPP

#include <string>

#include <json.hpp>

namespace mcform {

/// Reports are plain JSON documents.  Keys are kept sorted (nlohmann's
/// default object is map-backed) and every rational is rendered through
/// Scalar::str(), so serialisation is canonical: identical inputs yield
/// byte-identical reports.  Nothing time- or host-dependent may be added.
using Report = nlohmann::json;

std::string canonical_dump(const Report& r);

}  // namespace mcform

#endif

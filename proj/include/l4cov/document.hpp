#pragma once

// JSON certificate documents. Big integers are decimal strings; the
// serialization is canonical (fixed key order, two-space indent, trailing
// newline) so identical certificates produce identical bytes.

#include <string>

#include "l4cov/witness.hpp"

namespace l4cov {

inline constexpr int kSchemaVersion = 1;

class DocumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::string to_document(const WitnessCertificate& cert);

/// Throws DocumentError on syntax errors, unknown or missing fields, wrong
/// types, unsupported schema versions, or inconsistent parameters.
WitnessCertificate from_document(const std::string& text);

} // namespace l4cov

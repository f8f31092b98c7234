#pragma once

// Certificate file format. Every real quantity is a radical-expression
// string; lattice coordinates and small counts are JSON integers.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ramsey/deduction/certificate.hpp"

namespace ramsey::certs {

using Json = nlohmann::ordered_json;

/// Schema or expression error, prefixed by the offending field path.
class CertificateError : public std::runtime_error {
 public:
  CertificateError(const std::string& path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

deduction::Certificate load_certificate(std::string_view text);
deduction::Certificate load_certificate_file(const std::filesystem::path& path);

/// Canonical JSON form: fixed key order, expressions re-rendered.
Json serialize(const deduction::Certificate& cert);

/// The document with every expression string re-rendered from its parsed
/// value; structure and key order are kept. serialize(load(x)) equals this
/// for any x written in canonical key order with all fields present.
Json normalize(std::string_view text);

/// Parses JSON, rejecting duplicate object keys.
Json parse_json(std::string_view text);

}  // namespace ramsey::certs

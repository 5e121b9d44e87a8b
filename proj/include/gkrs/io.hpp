#pragma once

#include "json.hpp"  // vendored nlohmann::json

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gkrs/profiles.hpp"

// Serialization: the versioned profile record, CSV emission, small file
// helpers. JSON numbers round-trip exactly; CSV prints 17 significant digits.

namespace gkrs::io {

using json = nlohmann::ordered_json;

json profile_to_json(const profiles::ProfileSet& ps);
profiles::ProfileSet profile_from_json(const json& j);

json calabi_to_json(const profiles::CalabiProfile& cp);

std::string format_double(double v);  // 17 significant digits

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(std::span<const double> values);
    const std::string& str() const { return body_; }

private:
    std::string body_;
    size_t columns_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace gkrs::io

#include "cfa/report.hpp"

#include <fstream>
#include <sstream>

#include "cfa/errors.hpp"

namespace cfa {

std::string KeyValues::str() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

void csv_line(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    out += "\n";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw BadParams("cannot write " + path.string());
    os << text;
}

}  // namespace

std::string CsvTable::str() const {
    std::string out;
    csv_line(out, header);
    for (const auto& r : rows) csv_line(out, r);
    return out;
}

void Report::write(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw BadParams("cannot create output directory " + dir.string() + ": " + ec.message());
    write_file(dir / (name + ".txt"), values.str());
    for (const auto& [suffix, table] : tables) write_file(dir / (name + "_" + suffix + ".csv"), table.str());
}

}  // namespace cfa

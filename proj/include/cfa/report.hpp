#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cfa/rational_fit.hpp"

namespace cfa {

/// key=value lines, keys sorted, one pair per line.
class KeyValues {
public:
    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    void set(const std::string& key, const char* value) { entries_[key] = value; }
    void set(const std::string& key, bool value) { entries_[key] = value ? "true" : "false"; }
    void set(const std::string& key, long long value) { entries_[key] = std::to_string(value); }
    void set(const std::string& key, int value) { entries_[key] = std::to_string(value); }
    void set(const std::string& key, std::size_t value) { entries_[key] = std::to_string(value); }
    void set(const std::string& key, const Rational& value) { entries_[key] = to_string(value); }

    const std::map<std::string, std::string>& entries() const noexcept { return entries_; }
    std::string str() const;

private:
    std::map<std::string, std::string> entries_;
};

/// Values containing commas, quotes or newlines are quoted.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

/// Machine-readable output of one command: `<name>.txt` holds the key=value
/// part and each table goes to `<name>_<table>.csv`.
struct Report {
    std::string name;
    KeyValues values;
    std::vector<std::pair<std::string, CsvTable>> tables;

    void write(const std::filesystem::path& dir) const;
};

}  // namespace cfa

// Copyright 2026 The edrlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edrlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "edrlab/error.hpp"

namespace edrlab {

namespace {

std::string trim(const std::string &s) {
    auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return begin < end ? std::string(begin, end) : std::string();
}

bool valid_key(const std::string &key) {
    return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-' || c == '.';
    });
}

[[noreturn]] void bad_value(const std::string &key, const std::string &value, const char *expected) {
    throw Error(ErrorKind::Config,
                "config key '" + key + "' has value '" + value + "', expected " + expected);
}

double parse_double(const std::string &key, const std::string &text) {
    std::string t = trim(text);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(out)) {
        bad_value(key, text, "a finite number");
    }
    return out;
}

}  // namespace

Config Config::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

Config Config::parse(const std::string &text, const std::string &origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') {
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::Config, origin + ":" + std::to_string(line_no) +
                                               ": expected 'key = value', got '" + t + "'");
        }
        std::string key = trim(t.substr(0, eq));
        if (!valid_key(key)) {
            throw Error(ErrorKind::Config, origin + ":" + std::to_string(line_no) +
                                               ": invalid key '" + key + "'");
        }
        cfg.values_[key] = trim(t.substr(eq + 1));
    }
    return cfg;
}

void Config::set(const std::string &key, const std::string &value) {
    if (!valid_key(key)) {
        throw Error(ErrorKind::Config, "invalid config key '" + key + "'");
    }
    values_[key] = trim(value);
}

void Config::merge(const Config &other) {
    for (const auto &[k, v] : other.values_) {
        values_[k] = v;
    }
}

std::string Config::get_string(const std::string &key, const std::string &fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string &key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

std::uint64_t Config::get_uint(const std::string &key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    const std::string &t = it->second;
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        bad_value(key, t, "a nonnegative integer");
    }
    return out;
}

bool Config::get_bool(const std::string &key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    bad_value(key, it->second, "a boolean");
}

std::vector<double> Config::get_doubles(const std::string &key,
                                        const std::vector<double> &fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return fallback;
    }
    std::vector<double> out;
    if (trim(it->second).empty()) {
        return out;
    }
    std::stringstream ss(it->second + ",");
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

}  // namespace edrlab

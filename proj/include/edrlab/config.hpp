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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace edrlab {

/// Flat key/value configuration. Files hold one `key = value` per line;
/// blank lines and lines starting with '#' or ';' are ignored. Later
/// assignments win, so applying command-line overrides after loading a file
/// gives CLI > file > built-in defaults.
class Config {
   public:
    static Config from_file(const std::string &path);
    static Config parse(const std::string &text, const std::string &origin = "<string>");

    void set(const std::string &key, const std::string &value);
    void merge(const Config &other);
    bool has(const std::string &key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string> &entries() const { return values_; }

    std::string get_string(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key, double fallback) const;
    std::uint64_t get_uint(const std::string &key, std::uint64_t fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;
    /// Comma-separated numbers.
    std::vector<double> get_doubles(const std::string &key, const std::vector<double> &fallback) const;

   private:
    std::map<std::string, std::string> values_;
};

}  // namespace edrlab

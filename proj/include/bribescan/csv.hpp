/*
   Copyright 2026 The Bribescan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace bribescan::csv {

//! 12 significant digits; integral values keep a trailing ".0" ("8.0", "0.0").
std::string format_number(double v);

//! Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_line(std::string_view line);

//! Quotes a field only when it needs it.
std::string escape(std::string_view field);

//! Reads every non-empty record; the first is the header.
std::vector<std::vector<std::string>> read_all(std::istream& in);

}  // namespace bribescan::csv

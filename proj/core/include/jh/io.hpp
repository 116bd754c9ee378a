// SPDX-License-Identifier: MIT
#pragma once

#include "jh/forms.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace jh {

// {"degree","weight","index","bound","entries":[...]} with entries in canonical key order.
nlohmann::ordered_json table_to_json(const CoeffTable& t);
CoeffTable table_from_json(const nlohmann::json& j);

std::string dump_table(const CoeffTable& t);
CoeffTable load_table(const std::string& text);

void write_table_csv(std::ostream& os, const CoeffTable& t);

CoeffTable read_table_file(const std::string& path);
void write_table_file(const std::string& path, const CoeffTable& t);

}  // namespace jh

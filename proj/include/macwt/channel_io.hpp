#pragma once

#include <string>

#include <json.hpp>

#include "macwt/channel_core.hpp"

namespace macwt {

// Channel description document. Either an explicit tensor
//   {"x1_size":2,"x2_size":2,"y_size":3,"z_size":3,"transition":[...]}
// with the tensor flattened row-major over (x1,x2,y,z), or a builder shorthand
//   {"builder":"adder_bsc","params":{"p_main":0.05,"p_eve":0.2}}.
MacWiretapChannel channel_from_json(const nlohmann::json& doc);

MacWiretapChannel load_channel_file(const std::string& path);

}  // namespace macwt

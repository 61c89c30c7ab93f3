#pragma once

#include <string>
#include <string_view>

namespace otoc {

enum class Geometry { Brickwork, Staircase };
enum class Boundary { Open, Periodic };

std::string_view to_string(Geometry g);
std::string_view to_string(Boundary b);
// accepts the CLI spellings "bw"/"s" and "obc"/"pbc"
Geometry parse_geometry(std::string_view s);
Boundary parse_boundary(std::string_view s);

}  // namespace otoc

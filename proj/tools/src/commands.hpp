#pragma once

#include "polaromech_cli/scenario.hpp"

#include <vector>

namespace pm::cli {

std::vector<Command> structure_commands();
std::vector<Command> dynamics_commands();

}

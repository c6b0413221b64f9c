#include "commands.hpp"

namespace pm::cli {

const std::vector<Command>& commands() {
    static const std::vector<Command> all = [] {
        auto list = structure_commands();
        for (auto& c : dynamics_commands()) list.push_back(std::move(c));
        return list;
    }();
    return all;
}

}

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace wb {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Command {
    std::string verb;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> flags;
    bool parallel = false;
};

struct Report {
    enum class Status { pass, fail, info };
    Status status = Status::info;
    std::vector<std::string> findings;
    nlohmann::ordered_json machine;
};

std::string to_string(Report::Status s);

Report run(const Command& cmd);

// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wb

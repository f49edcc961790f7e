#pragma once

// Replays golden/cases.json through the in-process CLI.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace sbt {

struct GoldenResult {
    std::string name;
    bool match = false;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline std::vector<GoldenResult> run_goldens(const std::filesystem::path& dir, bool update = false) {
    std::vector<GoldenResult> out;
    for (const auto& c : nlohmann::json::parse(slurp(dir / "cases.json"))) {
        std::vector<std::string> args;
        for (std::string a : c["args"]) {
            if (a.rfind("@/", 0) == 0) a = (dir / a.substr(2)).string();
            args.push_back(a);
        }
        std::ostringstream o, e;
        int code = superbracket::cli::run(args, o, e);
        std::string got = o.str();
        std::istringstream err(e.str());
        for (std::string line; std::getline(err, line);) got += "stderr: " + line + "\n";
        got += "exit: " + std::to_string(code) + "\n";
        auto file = dir / (c["name"].get<std::string>() + ".out");
        if (update) std::ofstream(file, std::ios::binary) << got;
        out.push_back({c["name"], got == slurp(file)});
    }
    return out;
}

}  // namespace sbt

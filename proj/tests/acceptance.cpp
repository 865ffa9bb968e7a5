#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <string>

#include "affine/harness.hpp"

using namespace affine;

namespace {

// wall-clock limits in seconds
const std::map<std::string, double> kLimits = {{"c01", 10.0}, {"c04", 60.0}, {"c12", 600.0}};

}  // namespace

int main(int argc, char** argv)
{
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = argv[++i];
        else {
            std::fprintf(stderr, "usage: acceptance [--only cNN]\n");
            return 2;
        }
    }

    bool all = true;
    int ran = 0;
    for (auto& path : shippedConfigs(AFFINE_CONFIG_DIR)) {
        std::string id = std::filesystem::path(path).filename().string().substr(0, 3);
        if (!only.empty() && id != only)
            continue;
        ++ran;
        bool pass = false;
        double secs = 0.0;
        std::string name = id, detail;
        try {
            auto cfg = loadConfig(path);
            name = cfg.name;
            auto t0 = std::chrono::steady_clock::now();
            auto rep = runExperiment(cfg);
            secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            pass = rep.allPass();
            for (auto& r : rep.rows)
                if (!r.pass)
                    detail += "    " + r.quantity + " = " + std::to_string(r.value) + " (need " + r.relation + " " +
                              std::to_string(r.bound) + ")\n";
            auto lim = kLimits.find(id);
            if (lim != kLimits.end() && secs >= lim->second) {
                pass = false;
                detail += "    runtime " + std::to_string(secs) + " s over limit " + std::to_string(lim->second) + "\n";
            }
        } catch (const std::exception& e) {
            detail = std::string("    error: ") + e.what() + "\n";
        }
        std::printf("%s %s %s (%.2f s)\n%s", id.c_str(), pass ? "PASS" : "FAIL", name.c_str(), secs, detail.c_str());
        all = all && pass;
    }
    if (ran == 0) {
        std::fprintf(stderr, "no config matches '%s'\n", only.c_str());
        return 2;
    }
    return all ? 0 : 1;
}

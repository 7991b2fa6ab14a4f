#include "pqcside/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace pqcside::log {

namespace {
Level parse_env() {
    const char* env = std::getenv("PQCSIDE_LOG");
    if (!env) return Level::warn;
    std::string v(env);
    if (v == "error") return Level::error;
    if (v == "warn") return Level::warn;
    if (v == "info") return Level::info;
    if (v == "debug") return Level::debug;
    return Level::warn;
}

const char* level_tag(Level lvl) {
    switch (lvl) {
        case Level::error: return "error";
        case Level::warn: return "warn";
        case Level::info: return "info";
        case Level::debug: return "debug";
    }
    return "?";
}

std::mutex io_mutex;
}  // namespace

Level threshold() {
    static Level lvl = parse_env();
    return lvl;
}

bool enabled(Level lvl) {
    return int(lvl) <= int(threshold());
}

void write(Level lvl, std::string_view msg) {
    std::lock_guard<std::mutex> lock(io_mutex);
    std::fprintf(stderr, "[pqcside %s] %.*s\n", level_tag(lvl), int(msg.size()), msg.data());
}

}  // namespace pqcside::log

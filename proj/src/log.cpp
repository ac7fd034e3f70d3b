#include "dichotomy/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace dichotomy::log {

static Level parse_env() {
    const char* v = std::getenv("DICHOTOMY_LOG");
    if (v == nullptr) return Level::error;
    if (std::strcmp(v, "debug") == 0) return Level::debug;
    if (std::strcmp(v, "info") == 0) return Level::info;
    return Level::error;
}

Level level() {
    static const Level lvl = parse_env();
    return lvl;
}

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

void write(Level lvl, const char* fmt, ...) {
    if (!enabled(lvl)) return;
    const char* tag = lvl == Level::error ? "error" : (lvl == Level::info ? "info" : "debug");
    std::fprintf(stderr, "[dichotomy:%s] ", tag);
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    va_end(args);
    std::fputc('\n', stderr);
}

}  // namespace dichotomy::log

#pragma once

#include <cstdio>

namespace dichotomy::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Current level, taken from DICHOTOMY_LOG={error|info|debug}; defaults to error.
Level level();

bool enabled(Level lvl);

void write(Level lvl, const char* fmt, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

template <typename... Args>
void error(const char* fmt, Args... args) {
    write(Level::error, fmt, args...);
}
template <typename... Args>
void info(const char* fmt, Args... args) {
    write(Level::info, fmt, args...);
}
template <typename... Args>
void debug(const char* fmt, Args... args) {
    write(Level::debug, fmt, args...);
}

}  // namespace dichotomy::log

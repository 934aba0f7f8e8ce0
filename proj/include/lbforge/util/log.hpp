/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdarg>

namespace lbforge {

enum class LogLevel : int { error = 0, warn = 1, info = 2, debug = 3 };

/// Effective level, read once from LBFORGE_LOG (error|warn|info|debug).
LogLevel log_level();

void log_message(LogLevel level, const char* fmt, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

#define LBFORGE_LOG_ERROR(...) ::lbforge::log_message(::lbforge::LogLevel::error, __VA_ARGS__)
#define LBFORGE_LOG_WARN(...) ::lbforge::log_message(::lbforge::LogLevel::warn, __VA_ARGS__)
#define LBFORGE_LOG_INFO(...) ::lbforge::log_message(::lbforge::LogLevel::info, __VA_ARGS__)
#define LBFORGE_LOG_DEBUG(...) ::lbforge::log_message(::lbforge::LogLevel::debug, __VA_ARGS__)

}  // namespace lbforge

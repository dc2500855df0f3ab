#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "matchbandit/instance.hpp"

namespace matchbandit {

Rank1Instance instance_from_json(std::string_view text);
Rank1Instance load_instance(const std::filesystem::path& path);

// Canonical form: sorted keys, shortest round-trip numbers, no whitespace.
std::string instance_to_json(const Rank1Instance& instance);

// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string instance_digest(const Rank1Instance& instance);

}  // namespace matchbandit

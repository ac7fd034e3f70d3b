#pragma once
// Canonical include path for the vendored single-header nlohmann/json.
#include <json.hpp>

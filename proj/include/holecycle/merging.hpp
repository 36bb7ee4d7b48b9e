#pragma once
#include "holecycle/core.hpp"
namespace holecycle {
}  // namespace holecycle

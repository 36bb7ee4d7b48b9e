#include "holecycle/base.hpp"

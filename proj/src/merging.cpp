#include "holecycle/merging.hpp"

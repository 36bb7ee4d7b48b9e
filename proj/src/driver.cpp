#include "holecycle/driver.hpp"

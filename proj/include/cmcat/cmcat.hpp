#pragma once

// Umbrella header: the whole library in dependency order via the CLI layer.
#include "cmcat/cli.hpp"

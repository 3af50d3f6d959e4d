#ifndef LEAKSIM_LEAKSIM_HPP
#define LEAKSIM_LEAKSIM_HPP

#include "leaksim/descriptor.hpp"
#include "leaksim/device.hpp"
#include "leaksim/fixtures.hpp"
#include "leaksim/report.hpp"
#include "leaksim/runtime.hpp"
#include "leaksim/sinks.hpp"
#include "leaksim/taint.hpp"
#include "leaksim/trace.hpp"

#endif  // LEAKSIM_LEAKSIM_HPP

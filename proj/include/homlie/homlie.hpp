#pragma once

#include "homlie/error.hpp"
#include "homlie/exactlin.hpp"
#include "homlie/poly.hpp"
#include "homlie/report.hpp"
#include "homlie/core.hpp"
#include "homlie/verify.hpp"
#include "homlie/doubleext.hpp"
#include "homlie/structure.hpp"
#include "homlie/catalog.hpp"
#include "homlie/io.hpp"

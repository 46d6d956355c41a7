#pragma once

#include "meanmap/catalog.hpp"
#include "meanmap/error.hpp"
#include "meanmap/example1.hpp"
#include "meanmap/funceq.hpp"
#include "meanmap/generator.hpp"
#include "meanmap/hamel.hpp"
#include "meanmap/mapping.hpp"
#include "meanmap/mean_expr.hpp"
#include "meanmap/mean_json.hpp"
#include "meanmap/orbit.hpp"
#include "meanmap/rational.hpp"
#include "meanmap/report.hpp"
#include "meanmap/reproduction.hpp"
#include "meanmap/scalar.hpp"

#ifndef ANTITONIC_ANTITONIC_HPP_
#define ANTITONIC_ANTITONIC_HPP_

#include "antitonic/series.hpp"
#include "antitonic/pava.hpp"
#include "antitonic/oracle.hpp"
#include "antitonic/sequential.hpp"
#include "antitonic/idr.hpp"
#include "antitonic/bench.hpp"
#include "antitonic/io.hpp"

#endif  // ANTITONIC_ANTITONIC_HPP_

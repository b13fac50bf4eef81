#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "gwimm/path.hpp"

using namespace gwimm;

TEST_CASE("construction rejects malformed segment lists") {
  using S = CadlagPath::Segment;
  CHECK_THROWS(CadlagPath({}, 1.0));
  CHECK_THROWS(CadlagPath({S{0.5, 1.0, 0.0}}, 1.0));
  CHECK_THROWS(CadlagPath({S{0.0, 1.0, 0.0}, S{0.0, 2.0, 0.0}}, 1.0));
  CHECK_THROWS(CadlagPath({S{0.0, 1.0, 0.0}, S{0.6, 2.0, 0.0}}, 0.5));
}

TEST_CASE("values and left limits of a piecewise linear path") {
  using S = CadlagPath::Segment;
  const CadlagPath p({S{0.0, 1.0, -1.0}, S{0.5, 3.0, 0.0}, S{0.8, 0.0, 2.0}}, 1.0);
  CHECK(p.value(0.0) == 1.0);
  CHECK(p.value(0.25) == doctest::Approx(0.75));
  CHECK(p.left_limit(0.5) == doctest::Approx(0.5));
  CHECK(p.value(0.5) == 3.0);
  CHECK(p.left_limit(0.8) == 3.0);
  CHECK(p.value(1.0) == doctest::Approx(0.4));
  CHECK(p.left_limit(0.0) == 1.0);
  CHECK(p.segment_index(0.79) == 1);
  CHECK(p.breakpoints() == std::vector<double>{0.0, 0.5, 0.8});
  CHECK_THROWS_AS(p.value(1.5), std::out_of_range);
  CHECK_THROWS_AS(p.left_limit(-0.1), std::out_of_range);
}

TEST_CASE("lattice steps sit exactly on k/n") {
  const std::vector<double> levels{0.0, 1.0, 2.0, 3.0};
  const auto p = CadlagPath::lattice_steps(levels, 3.0);
  CHECK(p.end() == 1.0);
  CHECK(p.segments().size() == 4);
  CHECK(p.segments()[1].start == 1.0 / 3.0);
  CHECK(p.value(1.0 / 3.0) == 1.0);
  CHECK(p.left_limit(1.0 / 3.0) == 0.0);
  CHECK(p.value(0.999) == 2.0);
  CHECK(p.value(1.0) == 3.0);
  CHECK(CadlagPath::constant(2.0, 5.0).value(4.0) == 2.0);
}

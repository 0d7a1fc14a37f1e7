#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hll {

using Rational = boost::multiprecision::cpp_rational;

// Face weight sequence w(k), k >= 4.
class FaceWeights {
  public:
    static FaceWeights ones();
    static FaceWeights linear();
    static FaceWeights table(std::map<int, Rational> values);
    // "ones", "linear", or "table:4=1,7=1/2".
    static FaceWeights parse(std::string_view spec);

    double operator()(int k) const;
    Rational exact(int k) const;
    const std::string& name() const { return name_; }
    // Largest k with w(k) > 0 when the support is finite.
    std::optional<int> max_degree() const { return max_degree_; }

  private:
    std::string name_;
    std::function<Rational(int)> w_;
    std::optional<int> max_degree_;
};

} // namespace hll

// Copyright 2026 The qlattice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlattice/common/curve_fit.hpp"

#include <cmath>
#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/NumericalDiff>

#include "qlattice/common/errors.hpp"

namespace qlattice {

namespace {

struct Functor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  using QRSolver = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const CurveModel* model;
  const Eigen::VectorXd* x;
  const Eigen::VectorXd* y;
  const Eigen::VectorXd* w;
  int n_params;

  int inputs() const { return n_params; }
  int values() const { return static_cast<int>(x->size()); }

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    for (Eigen::Index i = 0; i < x->size(); ++i)
      r(i) = ((*model)(p, (*x)(i)) - (*y)(i)) * (*w)(i);
    return 0;
  }
};

}  // namespace

CurveFitResult fit_curve(const CurveModel& model, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y, const Eigen::VectorXd& initial,
                         const Eigen::VectorXd& weights) {
  const auto n = x.size();
  const auto p = initial.size();
  if (y.size() != n || n <= p)
    throw ValidationError("curve fit needs more points than parameters");
  const Eigen::VectorXd w = weights.size() == n ? weights : Eigen::VectorXd::Ones(n);
  Functor f{&model, &x, &y, &w, static_cast<int>(p)};
  Eigen::NumericalDiff<Functor, Eigen::Central> diff(f);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor, Eigen::Central>> lm(diff);
  lm.setMaxfev(4000);
  lm.setXtol(1e-12);
  lm.setFtol(1e-14);
  Eigen::VectorXd params = initial;
  const auto status = lm.minimize(params);
  if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
      !params.allFinite())
    throw ConvergenceError("least-squares fit did not converge");

  Eigen::VectorXd r(n);
  f(params, r);
  Eigen::MatrixXd jac(n, p);
  diff.df(params, jac);
  const double ssr = r.squaredNorm();
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (!lu.isInvertible()) throw ConvergenceError("least-squares fit is degenerate");
  const double s2 = ssr / static_cast<double>(n - p);
  CurveFitResult out;
  out.params = params;
  out.stderr_ = (s2 * lu.inverse().diagonal()).cwiseMax(0.0).cwiseSqrt();
  out.ssr = ssr;
  out.iterations = static_cast<int>(lm.iterations());
  return out;
}

}  // namespace qlattice

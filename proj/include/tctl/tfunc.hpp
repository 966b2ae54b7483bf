#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "tctl/tensor3.hpp"

namespace tctl {

//
// A scalar function lifted to tensors through its matrix evaluator. The
// evaluator must be defined on the spectrum of bcirc of every tensor the
// function is applied to.
//
struct TensorFunction {
    std::string name;
    std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> evaluate;
    // true when f(conj(z)) = conj(f(z)), so real tensors map to real tensors
    bool real_to_real = true;

    static TensorFunction identity();
    static TensorFunction exponential(double t = 1.0);  // exp(t *)
    // c[0] + c[1] x + ... + c[deg] x^deg
    static TensorFunction polynomial(std::vector<double> coeffs);
    static TensorFunction custom(std::string name,
                                 std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)> evaluate,
                                 bool real_to_real = false);
};

// f(a), computed per spectral slice as a matrix function.
Tensor3 tfun(const Tensor3& a, const TensorFunction& f);

// Tensor exponential e^{a t}.
Tensor3 texp(const Tensor3& a, double t);

// f(a) * b without forming f(a) as a separate tensor.
Tensor3 tfun_apply(const Tensor3& a, const TensorFunction& f, const Tensor3& b);

}  // namespace tctl

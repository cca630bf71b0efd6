#ifndef ITAGS__MATRIX_HPP
#define ITAGS__MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace itags {

/// Dense row-major matrix of reals.
class Matrix
{
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
  : _rows(rows), _cols(cols), _data(rows * cols, fill)
  {
  }

  std::size_t rows() const { return _rows; }
  std::size_t cols() const { return _cols; }

  double& operator()(std::size_t r, std::size_t c)
  {
    assert(r < _rows && c < _cols);
    return _data[r * _cols + c];
  }

  double operator()(std::size_t r, std::size_t c) const
  {
    assert(r < _rows && c < _cols);
    return _data[r * _cols + c];
  }

  std::span<const double> row(std::size_t r) const
  {
    return {_data.data() + r * _cols, _cols};
  }

  std::span<const double> data() const { return _data; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t _rows = 0;
  std::size_t _cols = 0;
  std::vector<double> _data;
};

} // namespace itags

#endif // ITAGS__MATRIX_HPP

#pragma once

#include <exception>
#include <vector>

namespace hyperlab::kernels {

template <class T, class F>
std::vector<T> map_indexed(int n, const F& f) {
  std::vector<T> out(static_cast<size_t>(n > 0 ? n : 0));
  std::vector<std::exception_ptr> errs(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

template <class T, class F>
std::vector<T> map_indexed_serial(int n, const F& f) {
  std::vector<T> out;
  out.reserve(static_cast<size_t>(n > 0 ? n : 0));
  for (int i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

}  // namespace hyperlab::kernels

// A pinned, self-contained introsort (median-of-3 quicksort with a depth
// limit, insertion-sort finish, heapsort fallback).  The Mykkeltveit
// construction scans k-mers in digit-sum order and the published remaining
// path lengths depend on the exact permutation this UNSTABLE sort produces
// for tied weights, so the algorithm is frozen here rather than delegated to
// std::sort (whose tie behavior is implementation-defined).
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace mds::pinned_sort {

inline constexpr std::ptrdiff_t kThreshold = 16;

namespace detail {

inline int floor_log2(std::ptrdiff_t n) {
  int k = -1;
  while (n) {
    n >>= 1;
    ++k;
  }
  return k;
}

template <typename T, typename Comp>
void move_median_to_first(std::vector<T>& a, std::ptrdiff_t result,
                          std::ptrdiff_t ia, std::ptrdiff_t ib,
                          std::ptrdiff_t ic, Comp comp) {
  if (comp(a[ia], a[ib])) {
    if (comp(a[ib], a[ic]))
      std::swap(a[result], a[ib]);
    else if (comp(a[ia], a[ic]))
      std::swap(a[result], a[ic]);
    else
      std::swap(a[result], a[ia]);
  } else if (comp(a[ia], a[ic]))
    std::swap(a[result], a[ia]);
  else if (comp(a[ib], a[ic]))
    std::swap(a[result], a[ic]);
  else
    std::swap(a[result], a[ib]);
}

template <typename T, typename Comp>
std::ptrdiff_t unguarded_partition(std::vector<T>& a, std::ptrdiff_t first,
                                   std::ptrdiff_t last, std::ptrdiff_t pivot,
                                   Comp comp) {
  while (true) {
    while (comp(a[first], a[pivot])) ++first;
    --last;
    while (comp(a[pivot], a[last])) --last;
    if (!(first < last)) return first;
    std::swap(a[first], a[last]);
    ++first;
  }
}

template <typename T, typename Comp>
std::ptrdiff_t unguarded_partition_pivot(std::vector<T>& a,
                                         std::ptrdiff_t first,
                                         std::ptrdiff_t last, Comp comp) {
  std::ptrdiff_t mid = first + (last - first) / 2;
  move_median_to_first(a, first, first + 1, mid, last - 1, comp);
  return unguarded_partition(a, first + 1, last, first, comp);
}

template <typename T, typename Comp>
void adjust_heap(std::vector<T>& a, std::ptrdiff_t first, std::ptrdiff_t hole,
                 std::ptrdiff_t length, T value, Comp comp) {
  std::ptrdiff_t top = hole;
  std::ptrdiff_t second = hole;
  while (second < (length - 1) / 2) {
    second = 2 * (second + 1);
    if (comp(a[first + second], a[first + second - 1])) --second;
    a[first + hole] = a[first + second];
    hole = second;
  }
  if (length % 2 == 0 && second == (length - 2) / 2) {
    second = 2 * (second + 1);
    a[first + hole] = a[first + second - 1];
    hole = second - 1;
  }
  std::ptrdiff_t parent = (hole - 1) / 2;
  while (hole > top && comp(a[first + parent], value)) {
    a[first + hole] = a[first + parent];
    hole = parent;
    parent = (hole - 1) / 2;
  }
  a[first + hole] = value;
}

template <typename T, typename Comp>
void heap_sort(std::vector<T>& a, std::ptrdiff_t first, std::ptrdiff_t last,
               Comp comp) {
  std::ptrdiff_t length = last - first;
  if (length >= 2) {
    std::ptrdiff_t parent = (length - 2) / 2;
    while (true) {
      T value = a[first + parent];
      adjust_heap(a, first, parent, length, value, comp);
      if (parent == 0) break;
      --parent;
    }
  }
  for (std::ptrdiff_t l = last; l > first + 1; --l) {
    std::swap(a[first], a[l - 1]);
    adjust_heap(a, first, std::ptrdiff_t{0}, l - 1 - first, a[first], comp);
  }
}

template <typename T, typename Comp>
void introsort_loop(std::vector<T>& a, std::ptrdiff_t first,
                    std::ptrdiff_t last, int depth_limit, Comp comp) {
  while (last - first > kThreshold) {
    if (depth_limit == 0) {
      heap_sort(a, first, last, comp);
      return;
    }
    --depth_limit;
    std::ptrdiff_t cut = unguarded_partition_pivot(a, first, last, comp);
    introsort_loop(a, cut, last, depth_limit, comp);
    last = cut;
  }
}

template <typename T, typename Comp>
void unguarded_linear_insert(std::vector<T>& a, std::ptrdiff_t last,
                             Comp comp) {
  T value = a[last];
  std::ptrdiff_t next = last - 1;
  while (comp(value, a[next])) {
    a[last] = a[next];
    last = next;
    --next;
  }
  a[last] = value;
}

template <typename T, typename Comp>
void insertion_sort(std::vector<T>& a, std::ptrdiff_t first,
                    std::ptrdiff_t last, Comp comp) {
  for (std::ptrdiff_t i = first + 1; i < last; ++i) {
    if (comp(a[i], a[first])) {
      T value = a[i];
      for (std::ptrdiff_t j = i; j > first; --j) a[j] = a[j - 1];
      a[first] = value;
    } else {
      unguarded_linear_insert(a, i, comp);
    }
  }
}

template <typename T, typename Comp>
void final_insertion_sort(std::vector<T>& a, std::ptrdiff_t first,
                          std::ptrdiff_t last, Comp comp) {
  if (last - first > kThreshold) {
    insertion_sort(a, first, first + kThreshold, comp);
    for (std::ptrdiff_t i = first + kThreshold; i < last; ++i)
      unguarded_linear_insert(a, i, comp);
  } else {
    insertion_sort(a, first, last, comp);
  }
}

}  // namespace detail

template <typename T, typename Comp>
void sort(std::vector<T>& a, Comp comp) {
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  if (n == 0) return;
  detail::introsort_loop(a, std::ptrdiff_t{0}, n, 2 * detail::floor_log2(n),
                         comp);
  detail::final_insertion_sort(a, std::ptrdiff_t{0}, n, comp);
}

}  // namespace mds::pinned_sort

#include "superpov/scores.hpp"

#include <exception>

#include <omp.h>

namespace superpov {

namespace {

DayResult score_one(const DayTask& task, const ScoreOptions& options) {
    try {
        return {score_day(load_field(task.path, {task.date, task.pressure_hpa}), options), {}};
    } catch (const std::exception& e) {
        return {std::nullopt, e.what()};
    }
}

} // namespace

std::vector<DayResult> score_tasks(const std::vector<DayTask>& tasks, const ScoreOptions& options, int jobs) {
    std::vector<DayResult> results(tasks.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::ptrdiff_t>(tasks.size());
    // days differ in cost (noisy days carry more pairs), hence dynamic scheduling
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < n; ++i) results[static_cast<std::size_t>(i)] = score_one(tasks[static_cast<std::size_t>(i)], options);
    return results;
}

std::vector<DayResult> score_tasks_serial(const std::vector<DayTask>& tasks, const ScoreOptions& options) {
    std::vector<DayResult> results;
    results.reserve(tasks.size());
    for (const auto& task : tasks) results.push_back(score_one(task, options));
    return results;
}

} // namespace superpov

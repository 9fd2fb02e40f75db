#pragma once

// Hourly outdoor temperature series: CSV ingestion, synthetic generation
// (annual + diurnal sinusoids with seeded Gaussian noise), and
// piecewise-linear evaluation in continuous time with periodic wrap.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "thermoscale/errors.hpp"
#include "thermoscale/geometry.hpp"

namespace thermoscale {

inline constexpr int kHoursPerYear = 8760;
inline constexpr double kSecondsPerHour = 3600.0;
inline constexpr double kMinWeatherC = -60.0;
inline constexpr double kMaxWeatherC = 60.0;

struct WeatherSeries {
    std::vector<double> temp_c;  // exactly 8760 values, hour-of-year order

    // Linear interpolation between hourly points; the year wraps.
    double value_at(double t_seconds) const {
        const double h = t_seconds / kSecondsPerHour;
        double whole = std::floor(h);
        const double frac = h - whole;
        std::int64_t i = static_cast<std::int64_t>(whole) % kHoursPerYear;
        if (i < 0) i += kHoursPerYear;
        const std::int64_t j = (i + 1) % kHoursPerYear;
        return temp_c[static_cast<std::size_t>(i)] * (1.0 - frac) +
               temp_c[static_cast<std::size_t>(j)] * frac;
    }

    double monthly_mean(int month) const {
        static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30,
                                                     31, 31, 30, 31, 30, 31};
        if (month < 0 || month >= 12)
            throw ValidationError("monthly_mean: month must be in [0, 12)");
        int start = 0;
        for (int m = 0; m < month; ++m) start += days[static_cast<std::size_t>(m)] * 24;
        const int count = days[static_cast<std::size_t>(month)] * 24;
        double sum = 0.0;
        for (int h = 0; h < count; ++h) sum += temp_c[static_cast<std::size_t>(start + h)];
        return sum / count;
    }
};

namespace detail {

inline void check_weather_value(double v, std::size_t row) {
    if (!std::isfinite(v) || v < kMinWeatherC || v > kMaxWeatherC)
        throw MalformedWeather("weather row " + std::to_string(row) + ": value " +
                               std::to_string(v) + " outside [" +
                               std::to_string(kMinWeatherC) + ", " +
                               std::to_string(kMaxWeatherC) + "] degC");
}

}  // namespace detail

// CSV layout: header line `hour,temp_c`, then 8760 data rows.
inline WeatherSeries load_weather_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedWeather("cannot open weather file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw MalformedWeather("weather file is empty: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "hour,temp_c")
        throw MalformedWeather("weather file header must be 'hour,temp_c', got '" + line + "'");

    WeatherSeries series;
    series.temp_c.reserve(kHoursPerYear);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedWeather("weather row " + std::to_string(row) + ": missing comma");
        const char* begin = line.data() + comma + 1;
        const char* end = line.data() + line.size();
        double v = 0.0;
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            throw MalformedWeather("weather row " + std::to_string(row) +
                                   ": non-numeric temperature '" +
                                   std::string(begin, end) + "'");
        detail::check_weather_value(v, row);
        series.temp_c.push_back(v);
        ++row;
    }
    if (series.temp_c.size() != kHoursPerYear)
        throw MalformedWeather("weather file has " + std::to_string(series.temp_c.size()) +
                               " data rows, expected " + std::to_string(kHoursPerYear));
    return series;
}

struct SyntheticWeatherParams {
    double mean_c = 4.5;
    double annual_amplitude = 11.5;   // peaks mid-July with the default phase
    double diurnal_amplitude = 4.0;
    double noise_std = 2.0;
    std::uint64_t seed = 1;
    double peak_day = 196.0;   // day-of-year where the annual cosine peaks
    double phase_hour = 9.0;   // diurnal sine zero-crossing; warmest 6 h later
};

inline WeatherSeries synthesize_weather(const SyntheticWeatherParams& p) {
    if (!(p.noise_std >= 0.0))
        throw ValidationError("synthesize_weather: noise_std must be >= 0");
    std::mt19937_64 rng(p.seed);
    auto gaussian = [&rng]() {
        const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    WeatherSeries series;
    series.temp_c.resize(kHoursPerYear);
    for (int hour = 0; hour < kHoursPerYear; ++hour) {
        const double day = hour / 24.0;
        const double hod = hour % 24;
        double v = p.mean_c +
                   p.annual_amplitude * std::cos(2.0 * kPi * (day - p.peak_day) / 365.0) +
                   p.diurnal_amplitude * std::sin(2.0 * kPi * (hod - p.phase_hour) / 24.0);
        if (p.noise_std > 0.0) v += p.noise_std * gaussian();
        detail::check_weather_value(v, static_cast<std::size_t>(hour));
        series.temp_c[static_cast<std::size_t>(hour)] = v;
    }
    return series;
}

}  // namespace thermoscale

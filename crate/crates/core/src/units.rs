//! Unit conversions between the internal system (feet, seconds, radians) and
//! the units used at I/O boundaries (miles per hour, degrees, inches).

/// 1 mph = 5280 ft / 3600 s.
pub const FPS_PER_MPH: f64 = 5280.0 / 3600.0;

/// Multiply before dividing: 15 MPH maps to exactly 22 fps and back, which
/// a single rounded conversion factor would miss by one ulp.
pub fn mph_to_fps(mph: f64) -> f64 {
    mph * 5280.0 / 3600.0
}

pub fn fps_to_mph(fps: f64) -> f64 {
    fps * 3600.0 / 5280.0
}

pub fn feet_to_inches(ft: f64) -> f64 {
    ft * 12.0
}

pub fn inches_to_feet(inches: f64) -> f64 {
    inches / 12.0
}

/// Rounds to six decimal places, the precision used for floats at rest in
/// CSV files. Values quantized to this grid survive a write/parse round trip
/// bit for bit, including a unit conversion each way, because the conversion
/// error (a few ulps) is ten orders of magnitude below the grid spacing.
pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mph_fps_conversion() {
        assert_eq!(mph_to_fps(15.0), 22.0);
        assert_eq!(fps_to_mph(22.0), 15.0);
        assert!((mph_to_fps(14.4) - 21.12).abs() < 1e-12);
    }

    #[test]
    fn round6_quantizes() {
        assert_eq!(round6(1.23456789), 1.234568);
        assert_eq!(round6(-0.0000004), -0.0);
        assert_eq!(round6(50.97), 50.97);
    }

    #[test]
    fn roundtrip_survives_conversion_on_the_6dec_grid() {
        // A value on the 6-decimal grid, converted to internal units and
        // back, must format to the same 6-decimal string.
        for raw in [8.123456, 14.4, 15.13, 41.04, 50.969999, 89.999999] {
            let q = round6(raw);
            let back = fps_to_mph(mph_to_fps(q));
            assert_eq!(format!("{:.6}", back), format!("{:.6}", q));
            let deg = round6(raw);
            let back = deg.to_radians().to_degrees();
            assert_eq!(format!("{:.6}", back), format!("{:.6}", deg));
        }
    }
}

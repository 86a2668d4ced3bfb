//! Order-statistic filters: standard and adaptive median.

use crate::error::{Error, Result};
use crate::filters::kernel::check_odd;
use crate::image::{pad_replicate, GrayImage};

/// Median of the `window`×`window` neighborhood (middle order statistic).
pub fn median_filter(img: &GrayImage, window: usize) -> Result<GrayImage> {
    check_odd(window)?;
    let view = pad_replicate(img, window / 2);
    let mid = window * window / 2;
    let mut buf = Vec::with_capacity(window * window);
    Ok(img.map_coords(|x, y| {
        view.window_into(x, y, window, &mut buf)
            .expect("window fits the padding");
        *buf.select_nth_unstable(mid).1
    }))
}

/// Adaptive median filter with maximum window `s_max`.
///
/// Starting from a 3×3 window, the window grows by 2 while its median is
/// not strictly between its minimum and maximum. Once a window with such a
/// median is found the center pixel is kept if it is itself strictly inside
/// `(min, max)`, otherwise replaced by the median. If the window would grow
/// past `s_max`, the last median is emitted.
pub fn adaptive_median(img: &GrayImage, s_max: usize) -> Result<GrayImage> {
    if s_max < 3 || s_max.is_multiple_of(2) {
        return Err(Error::BadSmax(s_max));
    }
    let view = pad_replicate(img, s_max / 2);
    let mut buf = Vec::with_capacity(s_max * s_max);
    Ok(img.map_coords(|x, y| {
        let center = img.get(x, y);
        let mut size = 3;
        loop {
            view.window_into(x, y, size, &mut buf)
                .expect("window fits the padding");
            buf.sort_unstable();
            let (lo, med, hi) = (buf[0], buf[buf.len() / 2], buf[buf.len() - 1]);
            if lo < med && med < hi {
                return if lo < center && center < hi { center } else { med };
            }
            size += 2;
            if size > s_max {
                return med;
            }
        }
    }))
}

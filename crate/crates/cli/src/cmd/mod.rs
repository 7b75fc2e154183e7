pub mod covering;
pub mod selfpower;
pub mod sturmian;
pub mod waring;

import unittest

from _test_support import FixtureHandler, FixtureServerCase, fixture_archive
from wordsurf.dataset import download, extract_images, fetch_scene
from wordsurf.errors import DownloadError, SizeMismatchError, UnknownSceneError
from wordsurf.image import read_pgm


class FetchSceneTests(FixtureServerCase):
    def test_fetch_converts_archive_images_to_pgm(self):
        result = fetch_scene("graffiti", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertFalse(result.cache_hit)
        self.assertEqual([path.name for path in result.images], ["img1.pgm", "img2.pgm"])
        first = read_pgm(result.images[0].read_bytes())
        self.assertEqual((first.width, first.height), (20, 10))
        self.assertTrue((first.pixels == 255).all())
        self.assertTrue((result.directory / "manifest.json").exists())

    def test_second_fetch_is_a_cache_hit(self):
        fetch_scene("graffiti", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertEqual(FixtureHandler.paths, ["/graf.tar.gz"])
        again = fetch_scene("graffiti", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertTrue(again.cache_hit)
        self.assertEqual(len(again.images), 2)
        self.assertEqual(FixtureHandler.paths, ["/graf.tar.gz"])

    def test_missing_pgm_forces_a_new_download(self):
        result = fetch_scene("graffiti", cache_dir=self.cache_dir, base_url=self.base_url)
        result.images[1].unlink()
        again = fetch_scene("graffiti", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertFalse(again.cache_hit)
        self.assertEqual(len(FixtureHandler.paths), 2)

    def test_unknown_scene(self):
        with self.assertRaises(UnknownSceneError) as ctx:
            fetch_scene("mona-lisa", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertIn("graffiti", str(ctx.exception))
        self.assertEqual(FixtureHandler.paths, [])

    def test_short_body_is_a_size_mismatch(self):
        with self.assertRaises(SizeMismatchError) as ctx:
            fetch_scene("bikes", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertIn("declared", str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 11)
        self.assertFalse((self.cache_dir / "bikes").exists())

    def test_download_returns_the_complete_body(self):
        self.assertEqual(download(self.base_url + "graf.tar.gz"), (self.root / "graf.tar.gz").read_bytes())

    def test_missing_archive(self):
        with self.assertRaises(DownloadError):
            fetch_scene("bark", cache_dir=self.cache_dir, base_url=self.base_url)

    def test_corrupt_archive(self):
        with self.assertRaises(DownloadError):
            fetch_scene("wall", cache_dir=self.cache_dir, base_url=self.base_url)
        self.assertFalse((self.cache_dir / "wall" / "manifest.json").exists())


class ExtractImagesTests(unittest.TestCase):
    def test_members_are_sorted_and_non_images_skipped(self):
        images = extract_images(fixture_archive())
        self.assertEqual([stem for stem, _ in images], ["img1", "img2"])
        self.assertEqual(images[1][1].pixels.max(), 29)


if __name__ == "__main__":
    unittest.main()

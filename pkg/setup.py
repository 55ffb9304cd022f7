import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="salem-lp",
    version="0.1.0",
    author="salem-lp developers",
    description="(p, s)-Salem sets and finite-field Fourier experiments",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(include=["salem_lp", "salem_lp.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.10',
    install_requires=[
        "pydantic>=2.9.2",
        "pyyaml>=6.0.1",
        "numpy>=1.26.0",
        "scipy>=1.11.0",
        "python-dotenv>=1.0.1",
    ],
    entry_points={"console_scripts": ["salem=salem_lp.cli:main"]},
)
